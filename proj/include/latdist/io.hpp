#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "latdist/algebra.hpp"
#include "latdist/distance.hpp"
#include "latdist/lattice.hpp"
#include "latdist/spectral.hpp"

namespace latdist {

// Configuration problems (unknown fields, bad values, missing files) are
// reported through this type so the CLI can map them to its config-error
// exit code.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct LinkSource {
    enum class Kind { Unit, Inline, Random };
    Kind kind = Kind::Unit;
    std::vector<cplx> inline_values;
    std::uint64_t seed = 1;
    double amp_lo = 0.5;
    double amp_hi = 2.0;
    double phase_lo = -3.14159265358979323846;
    double phase_hi = 3.14159265358979323846;
};

struct SweepConfig {
    std::string parameter;  // "sites" | "amplitude_scale" | "phase_magnitude"
    std::vector<double> values;
    std::optional<std::pair<int, int>> pair;  // defaults to (0, sites-1)
};

struct VerifyConfig {
    int sites = 8;
    int trials = 50;
    std::uint64_t seed = 20260809;
    double tol_scale = 1.0;  // multiplies every invariant threshold
};

struct RunConfig {
    LatticeSpec lattice{Topology::Open, 8, 2};
    LinkSource link;
    DiracFamily family = DiracFamily::DMGeneralized;
    std::vector<DistanceMethod> methods{DistanceMethod::ClosedForm, DistanceMethod::Numerical};
    std::string output_path = ".";
    std::string output_format = "csv";  // "csv" | "json"
    OptimizerConfig optimizer;
    VerifyConfig verify;
    std::optional<SweepConfig> sweep;
};

// Parses the JSON config document; unknown keys and malformed values raise
// ConfigError naming the offending field.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Materialises the configured link field on the configured lattice.
LinkField make_link_field(const RunConfig& cfg);

std::string topology_name(Topology t);
std::string method_name(DistanceMethod m);
std::string family_name(DiracFamily f);

// Serialisation. CSV rows/columns are labelled by site index; JSON documents
// carry a schema_version field. Layouts are described in docs/formats.md.
std::string distance_matrix_csv(const DistanceMatrix& m);
std::string distance_matrix_json(const DistanceMatrix& m, const LatticeSpec& spec);
std::string link_field_json(const LinkField& omega);
LinkField parse_link_field_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Fixed-format double used by every emitter, so reruns are byte-identical.
std::string format_double(double v);

}  // namespace latdist
