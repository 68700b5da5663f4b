#pragma once

#include "liftkin/analysis.hpp"
#include "liftkin/dynamics.hpp"

#include <string>
#include <vector>

namespace liftkin {

/// Columns written as %.12e so files are byte-stable across runs.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

/// Two-column `t,norm` curve.
void write_norm_curve_csv(const std::string& path, const std::vector<double>& times,
                          const std::vector<double>& values);

/// `t,value[,stderr]` plus a JSON sidecar string with the fit results.
void write_decay_curve_csv(const std::string& path, const DecayCurve& curve);
std::string decay_fit_json(const DecayCurve& curve);

/// Ensemble as raw little-endian float64 [traj][time][coord] at base + ".bin"
/// with a JSON header sidecar at base + ".json".
void write_ensemble(const std::string& base_path, const Ensemble& ens);
Ensemble read_ensemble(const std::string& base_path);

/// Flat CSV (traj,time,coord columns) for small runs.
void write_ensemble_csv(const std::string& path, const Ensemble& ens);

} // namespace liftkin
