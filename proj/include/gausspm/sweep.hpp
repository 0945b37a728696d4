#pragma once

// Evaluation of named quantities on named states, and (q, r) grid sweeps.
// Shared by the gausspm command-line tool and the tests.

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "gausspm/negativity.hpp"

namespace gausspm {

/// Output path could not be opened or written.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class StateKind { sqth, coherent, evenodd };
enum class Op { add, subtract, none };
enum class Quantity { qcs, gain, negativity, classify, qng, wigner0, npt, eof };
enum class Format { csv, json };

StateKind parse_state(const std::string& s);
Op parse_op(const std::string& s);
Quantity parse_quantity(const std::string& s);
Format parse_format(const std::string& s);
Parity parse_parity(const std::string& s);
const char* to_string(StateKind s);
const char* to_string(Op o);
const char* to_string(Quantity q);

/// "re,im,re,im,..." -> complex vector, normalized. Throws DomainError.
CVec parse_mode_vector(const std::string& text);

struct EvalSpec {
    StateKind state = StateKind::sqth;
    double q = 0.0;
    double r = 0.0;
    double alpha = 0.0;
    int modes = 1;
    Op op = Op::add;
    std::optional<CVec> c;  ///< defaults to photon on mode 1
    Parity parity = Parity::even;
    Quantity quantity = Quantity::qcs;
    std::uint64_t seed = 20240501;
    std::uint64_t stream = 0;
    int threads = 0;  ///< Monte Carlo worker threads, 0 = all cores
};

struct EvalRecord {
    std::string state;
    std::string quantity;
    nlohmann::json value;  ///< number or label
    std::string method;
    double error_estimate = 0.0;
    nlohmann::json details = nlohmann::json::object();
};

/// Throws DomainError (including AnnihilatingSubtraction) and ConvergenceError.
EvalRecord evaluate(const EvalSpec& spec);

nlohmann::json to_json(const EvalRecord& rec);

/// 12 significant digits, shortest form; "nan"/"inf" spelled out.
std::string format_number(double x);

struct Range {
    double min = 0.0;
    double max = 0.0;
    int steps = 2;
    double at(int i) const;
};

/// "min:max:steps" with steps >= 2 and min <= max.
Range parse_range(const std::string& text);

struct SweepSpec {
    EvalSpec base;
    Range q;
    Range r;
    Format format = Format::csv;
    int jobs = 0;  ///< 0 = hardware concurrency
};

/// Row-major over (q, r). Points outside the domain are written with value
/// nan and method "domain-error". Output order never depends on jobs.
void run_sweep(const SweepSpec& spec, std::ostream& out);

}  // namespace gausspm
