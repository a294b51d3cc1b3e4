#pragma once

// JSON and CSV encodings of the library types.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcopt/convergence.hpp"
#include "dcopt/data.hpp"
#include "dcopt/dc_loss.hpp"
#include "dcopt/neuron.hpp"
#include "dcopt/sweep.hpp"

namespace dcopt {

using Json = nlohmann::ordered_json;

// DCParams is stored as {r, c, d, p_d}; derived values are recomputed on load.
Json to_json(const DCParams& params);
DCParams params_from_json(const Json& j);

Json to_json(const SyntheticSpec& spec);
SyntheticSpec synthetic_spec_from_json(const Json& j);

/// Axes are {"lo", "hi", "steps"} objects; missing keys keep their defaults.
Json to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const Json& j);

Json to_json(const TrainConfig& cfg);
Json to_json(const WeightVector& theta);
Json to_json(const VerificationReport& report);
Json to_json(const ShiftReport& report);
Json to_json(const SweepResult& result);

/// Parses a JSON document; FormatError on syntax errors, IoError if unreadable.
Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

/// epoch,train_loss,test_accuracy,theta_norm,min_normalized_margin
void write_trace_csv(std::span<const EpochTrace> trace, std::ostream& out);

/// z,g_dc,g_default,lower,upper. lower/upper are the bracket mapped through
/// d + (.)/r, left empty where z <= e.
void write_rate_curve_csv(const RateCurve& curve, std::ostream& out);

/// As write_rate_curve_csv plus a trailing z_min column.
void write_rates_csv(const RateCurve& curve, std::ostream& out);

/// t,prob,loss,derivative,f on `samples` evenly spaced points of [t_lo, t_hi].
void write_loss_curves_csv(const DCParams& params, double t_lo, double t_hi, std::size_t samples,
                           std::ostream& out);

/// config_id,r,c,d,p_d,kind,run,final_loss,final_accuracy. Failed runs carry
/// empty loss and accuracy fields.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

/// config_id,epoch,mean_loss,std_loss,mean_accuracy,std_accuracy
void write_sweep_curves_csv(const SweepResult& result, std::ostream& out);

}  // namespace dcopt
