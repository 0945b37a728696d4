// gausspm: phase-space quantities of photon-added/subtracted Gaussian
// states, single points or (q, r) grid sweeps, plus the acceptance suite.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gausspm/acceptance.hpp"
#include "gausspm/photon_ops.hpp"
#include "gausspm/sweep.hpp"

namespace {

enum ExitCode {
    kOk = 0,
    kSelftestFailed = 1,
    kParseError = 2,
    kDomainError = 3,
    kOutputError = 4,
    kConvergenceError = 5,
    kInternalError = 6,
};

int fail(int code, const std::string& kind, const std::string& message) {
    nlohmann::json j{{"error", kind}, {"exit_code", code}, {"message", message}};
    std::cerr << j.dump() << std::endl;
    return code;
}

// --params <file>: key=value lines, spliced in front of the real flags so
// explicit flags win.
std::vector<std::string> expand_params(std::vector<std::string> args) {
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] != "--params") continue;
        std::ifstream in(args[i + 1]);
        if (!in) throw CLI::ValidationError("--params", "cannot read " + args[i + 1]);
        std::vector<std::string> injected;
        std::string line;
        while (std::getline(in, line)) {
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw CLI::ValidationError("--params", "line without '=': " + line);
            }
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                const auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            injected.push_back("--" + trim(line.substr(0, eq)));
            injected.push_back(trim(line.substr(eq + 1)));
        }
        args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
        // args[0] is the subcommand; file values go right after it.
        args.insert(args.begin() + 1, injected.begin(), injected.end());
        break;
    }
    return args;
}

struct Flags {
    std::string state = "sqth";
    std::string q = "0";
    std::string r = "0";
    double alpha = 0.0;
    int modes = 1;
    std::string op = "add";
    std::string c;
    std::string quantity = "qcs";
    std::string parity = "even";
    std::string out = "-";
    std::string format = "csv";
    std::uint64_t seed = 20240501;
    int jobs = 0;
    std::string params;
};

void add_state_flags(CLI::App* cmd, Flags& f, bool ranges) {
    cmd->add_option("--state", f.state, "sqth | coherent | evenodd")
        ->check(CLI::IsMember({"sqth", "coherent", "evenodd"}));
    cmd->add_option("--q", f.q, ranges ? "thermal parameter range min:max:steps"
                                       : "thermal parameter in [0,1)");
    cmd->add_option("--r", f.r, ranges ? "squeezing range min:max:steps" : "squeezing r >= 0");
    cmd->add_option("--alpha", f.alpha, "coherent amplitude (coherent, evenodd)");
    cmd->add_option("--modes", f.modes, "1 or 2")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--op", f.op, "add | subtract | none")
        ->check(CLI::IsMember({"add", "subtract", "none"}));
    cmd->add_option("--c", f.c, "mode vector as comma-separated re,im pairs (normalized)");
    cmd->add_option("--quantity", f.quantity, "qcs | gain | negativity | classify | qng | wigner0 | npt | eof")
        ->check(CLI::IsMember({"qcs", "gain", "negativity", "classify", "qng", "wigner0", "npt", "eof"}));
    cmd->add_option("--parity", f.parity, "even | odd (evenodd states)")
        ->check(CLI::IsMember({"even", "odd"}));
    cmd->add_option("--seed", f.seed, "Monte Carlo seed");
    cmd->add_option("--jobs", f.jobs, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
    cmd->add_option("--out", f.out, "output path, - for stdout");
    cmd->add_option("--params", f.params, "key=value file with the same flags");
}

gausspm::EvalSpec base_spec(const Flags& f) {
    gausspm::EvalSpec spec;
    spec.state = gausspm::parse_state(f.state);
    spec.alpha = f.alpha;
    spec.modes = f.modes;
    spec.op = gausspm::parse_op(f.op);
    if (!f.c.empty()) spec.c = gausspm::parse_mode_vector(f.c);
    spec.parity = gausspm::parse_parity(f.parity);
    spec.quantity = gausspm::parse_quantity(f.quantity);
    spec.seed = f.seed;
    spec.threads = f.jobs;
    return spec;
}

double parse_number(const std::string& flag, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw CLI::ValidationError(flag, "'" + text + "' is not a number");
    }
    return v;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw gausspm::OutputError("cannot open output path " + path);
        }
        path_ = path;
    }
    std::ostream& stream() { return path_ == "-" ? std::cout : file_; }
    void close() {
        if (path_ == "-") {
            std::cout.flush();
            return;
        }
        file_.close();
        if (!file_) throw gausspm::OutputError("failed writing output path " + path_);
    }

private:
    std::string path_;
    std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photon-added/subtracted Gaussian states: QCS, Wigner negativity, classification"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    Flags eval_flags, sweep_flags;
    auto* eval = app.add_subcommand("eval", "evaluate one quantity, print one JSON record");
    add_state_flags(eval, eval_flags, false);
    auto* sweep = app.add_subcommand("sweep", "evaluate over a (q, r) grid, write CSV or JSON lines");
    add_state_flags(sweep, sweep_flags, true);
    sweep->add_option("--format", sweep_flags.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    auto* selftest = app.add_subcommand("selftest", "run the acceptance checks");
    double mutation = 0.0;
    selftest->add_option("--mutate-wigner-constant", mutation,
                         "add this offset to M+- (mutation sanity check)");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = expand_params(args);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kParseError, "ParseError", e.what());
    }

    try {
        if (*selftest) {
            gausspm::debug::set_wigner_constant_offset(mutation);
            const auto t0 = std::chrono::steady_clock::now();
            const auto results = gausspm::run_acceptance(&std::cout);
            int failed = 0;
            for (const auto& r : results) failed += !r.pass;
            const double dt =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::cout << (failed ? "FAILED " : "PASSED ") << results.size() - failed << "/"
                      << results.size() << " checks in " << dt << " s" << std::endl;
            return failed ? kSelftestFailed : kOk;
        }

        const bool is_eval = static_cast<bool>(*eval);
        const Flags& f = is_eval ? eval_flags : sweep_flags;
        gausspm::EvalSpec spec;
        gausspm::SweepSpec sspec;
        try {
            spec = base_spec(f);
            if (is_eval) {
                spec.q = parse_number("--q", f.q);
                spec.r = parse_number("--r", f.r);
            } else {
                sspec.base = spec;
                sspec.q = gausspm::parse_range(f.q);
                sspec.r = gausspm::parse_range(f.r);
                sspec.format = gausspm::parse_format(f.format);
                sspec.jobs = f.jobs;
            }
        } catch (const gausspm::DomainError& e) {
            return fail(kParseError, "ParseError", e.what());
        } catch (const CLI::ParseError& e) {
            return fail(kParseError, "ParseError", e.what());
        }

        Output out(f.out);
        if (is_eval) {
            out.stream() << gausspm::to_json(gausspm::evaluate(spec)).dump() << '\n';
        } else {
            gausspm::run_sweep(sspec, out.stream());
        }
        out.close();
        return kOk;
    } catch (const gausspm::AnnihilatingSubtraction& e) {
        return fail(kDomainError, "AnnihilatingSubtraction", e.what());
    } catch (const gausspm::DomainError& e) {
        return fail(kDomainError, "DomainError", e.what());
    } catch (const gausspm::OutputError& e) {
        return fail(kOutputError, "OutputError", e.what());
    } catch (const gausspm::ConvergenceError& e) {
        return fail(kConvergenceError, "ConvergenceError", e.what());
    } catch (const std::exception& e) {
        return fail(kInternalError, "InternalError", e.what());
    }
}
