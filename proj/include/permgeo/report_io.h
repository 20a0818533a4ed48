#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "permgeo/ball_counting.h"
#include "permgeo/efftests.h"
#include "permgeo/estimator.h"
#include "permgeo/perm_oracle.h"

namespace permgeo {

// Fields: alpha, numerator, n_p (decimal string), estimate_raw, estimate,
// r_l, r_u, mode, flags, seconds.
nlohmann::json to_json(const EstimateReport& report);
nlohmann::json to_json(const PermutationResult& result);
nlohmann::json to_json(const EffTestsFit& fit);

std::string estimate_tsv_header();
std::string to_tsv_row(const EstimateReport& report);
std::string permutation_tsv_header();
std::string to_tsv_row(const PermutationResult& result);

// Columns r, C_U(r) (C_U(0) reported as 0).
void write_count_tsv(std::ostream& out, const CountTable& table);

} // namespace permgeo
