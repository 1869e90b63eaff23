#pragma once

#include "artin/estimators.hpp"

#include <iosfwd>
#include <string>

namespace artin::est {

inline constexpr const char* checkpoint_csv_header = "N_total,N_used,p_N,estimate,target,deviation";

/// 18 significant digits, plain decimal for |x| >= 1e-5, exponent form below.
std::string format_value(const Extended& x);

std::string format_row(const CheckpointRow& row);

void write_checkpoint_csv(std::ostream& os, const CheckpointSeries& series);

/// Parses a file produced by write_checkpoint_csv. Throws ConfigError on a
/// malformed header or row.
CheckpointSeries read_checkpoint_csv(std::istream& is);

} // namespace artin::est
