// Text forms of weights, sequences and number lists used by the CLI.
//
//   const:L            constant L
//   pow:k,e            k t^e
//   extg:a,L           L (1 - a) t^{-a}
//   extphi:a[,eps]     t^a + eps
//   step:b1,..;l1,..   levels l1.. separated at breakpoints b1..
//   table:path         two columns (t, value) per line; '#' starts a comment
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hardylab/core.hpp"

namespace hardylab::text {

/// Full-string decimal parse; DomainError otherwise.
double parse_number(std::string_view s);

/// Comma separated numbers; empty input gives an empty list.
std::vector<double> parse_list(std::string_view s);

/// "lo,hi".
Interval parse_interval(std::string_view s);

WeightFamily parse_weight(std::string_view spec);

/// Reads two whitespace or comma separated columns.
void read_columns(const std::string& path, std::vector<double>& first, std::vector<double>& second);

/// Two columns (lambda, a) per line.
SequenceData read_sequence(const std::string& path);

}  // namespace hardylab::text
