#include "gausspm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include "gausspm/classify.hpp"
#include "gausspm/qcs.hpp"

namespace gausspm {

namespace {

template <class E>
E lookup(const std::string& s, std::initializer_list<std::pair<const char*, E>> table,
         const char* what) {
    for (const auto& [name, value] : table) {
        if (s == name) return value;
    }
    throw DomainError(std::string("unknown ") + what + " '" + s + "'");
}

GaussianState build_mother(const EvalSpec& spec) {
    if (spec.modes != 1 && spec.modes != 2) throw DomainError("--modes must be 1 or 2");
    if (spec.state == StateKind::sqth) {
        const GaussianState one = make_sqth(spec.q, spec.r);
        return spec.modes == 1 ? one : make_product({one, one});
    }
    if (!std::isfinite(spec.alpha)) throw DomainError("alpha must be finite");
    return make_coherent(CVec::Constant(spec.modes, cplx(spec.alpha, 0.0)));
}

ModeVector build_mode(const EvalSpec& spec) {
    if (!spec.c) return ModeVector::unit(spec.modes, 0);
    if (spec.c->size() != spec.modes) {
        throw DomainError("--c must have one complex pair per mode");
    }
    return ModeVector(*spec.c);
}

void fill_classification(EvalRecord& rec, const ClassificationReport& rep) {
    std::string neg = rep.wigner_negative == Verdict::yes ? "wigner-negative"
                      : rep.wigner_negative == Verdict::no ? "wigner-positive"
                                                           : "wigner-unknown";
    rec.value = rep.label() + "+" + neg;
    rec.method = "eigen-criterion";
    for (const auto& [k, v] : rep.witness_values) rec.details[k] = v;
}

EvalRecord evaluate_even_odd(const EvalSpec& spec, EvalRecord rec) {
    if (spec.op != Op::add) throw DomainError("even/odd states are photon-added (--op add)");
    if (!(spec.alpha >= 0.0)) throw DomainError("alpha must be >= 0");
    const TwoModeCoherentPlus s{cplx(spec.alpha, 0.0), spec.parity};
    rec.details["parity"] = to_string(spec.parity);
    switch (spec.quantity) {
        case Quantity::qcs:
            rec.value = even_odd_scalars(s).qcs_squared;
            rec.method = to_string(QcsMethod::pure_state_total_noise);
            return rec;
        case Quantity::npt:
            rec.value = even_odd_scalars(s).npt;
            rec.method = "schmidt-gram";
            return rec;
        case Quantity::eof:
            rec.value = even_odd_scalars(s).eof;
            rec.method = "schmidt-gram";
            return rec;
        case Quantity::negativity: {
            const NegativityReport n = negative_volume_even_odd(spec.alpha, spec.parity);
            rec.value = n.volume;
            rec.method = to_string(n.method);
            rec.error_estimate = n.error_estimate;
            return rec;
        }
        case Quantity::classify:
            fill_classification(rec, classify_added(make_even_odd(s)));
            return rec;
        case Quantity::gain:
            rec.value = relative_gain(make_even_odd(s));
            rec.method = to_string(QcsMethod::moment_engine);
            return rec;
        default:
            throw DomainError(std::string("quantity '") + to_string(spec.quantity) +
                              "' is not defined for even/odd states");
    }
}

}  // namespace

StateKind parse_state(const std::string& s) {
    return lookup<StateKind>(s, {{"sqth", StateKind::sqth},
                                 {"coherent", StateKind::coherent},
                                 {"evenodd", StateKind::evenodd}},
                             "state");
}

Op parse_op(const std::string& s) {
    return lookup<Op>(s, {{"add", Op::add}, {"subtract", Op::subtract}, {"none", Op::none}}, "op");
}

Quantity parse_quantity(const std::string& s) {
    return lookup<Quantity>(s, {{"qcs", Quantity::qcs},
                                {"gain", Quantity::gain},
                                {"negativity", Quantity::negativity},
                                {"classify", Quantity::classify},
                                {"qng", Quantity::qng},
                                {"wigner0", Quantity::wigner0},
                                {"npt", Quantity::npt},
                                {"eof", Quantity::eof}},
                            "quantity");
}

Format parse_format(const std::string& s) {
    return lookup<Format>(s, {{"csv", Format::csv}, {"json", Format::json}}, "format");
}

Parity parse_parity(const std::string& s) {
    return lookup<Parity>(s, {{"even", Parity::even}, {"odd", Parity::odd}}, "parity");
}

const char* to_string(StateKind s) {
    switch (s) {
        case StateKind::sqth: return "sqth";
        case StateKind::coherent: return "coherent";
        case StateKind::evenodd: return "evenodd";
    }
    return "unknown";
}

const char* to_string(Op o) {
    switch (o) {
        case Op::add: return "add";
        case Op::subtract: return "subtract";
        case Op::none: return "none";
    }
    return "unknown";
}

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::qcs: return "qcs";
        case Quantity::gain: return "gain";
        case Quantity::negativity: return "negativity";
        case Quantity::classify: return "classify";
        case Quantity::qng: return "qng";
        case Quantity::wigner0: return "wigner0";
        case Quantity::npt: return "npt";
        case Quantity::eof: return "eof";
    }
    return "unknown";
}

CVec parse_mode_vector(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("--c entry '" + item + "' is not a number");
        }
    }
    if (parts.empty() || parts.size() % 2 != 0) {
        throw DomainError("--c needs comma-separated (re,im) pairs");
    }
    CVec c(parts.size() / 2);
    for (std::size_t i = 0; i < parts.size() / 2; ++i) c[i] = cplx(parts[2 * i], parts[2 * i + 1]);
    const double norm = c.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("--c must be a nonzero vector");
    return c / norm;
}

EvalRecord evaluate(const EvalSpec& spec) {
    EvalRecord rec;
    rec.state = to_string(spec.state);
    rec.quantity = to_string(spec.quantity);
    if (spec.state == StateKind::evenodd) {
        if (spec.modes != 2 && spec.modes != 1) throw DomainError("--modes must be 1 or 2");
        return evaluate_even_odd(spec, rec);
    }

    const GaussianState mother = build_mother(spec);
    if (spec.op == Op::none) {
        switch (spec.quantity) {
            case Quantity::qcs:
                rec.value = qcs_gaussian(mother).qcs_squared;
                rec.method = to_string(QcsMethod::gaussian_closed_form);
                return rec;
            case Quantity::negativity:
                rec.value = 0.0;
                rec.method = "gaussian-positive";
                return rec;
            case Quantity::classify:
                fill_classification(rec, classify_gaussian(mother));
                return rec;
            case Quantity::wigner0:
                rec.value = gaussian_wigner(mother, RVec::Zero(2 * mother.modes()));
                rec.method = "closed-form";
                return rec;
            default:
                throw DomainError(std::string("quantity '") + to_string(spec.quantity) +
                                  "' needs --op add or subtract");
        }
    }

    const Sign sign = spec.op == Op::add ? Sign::add : Sign::subtract;
    const PhotonTunedState ps = make_photon_tuned(mother, sign, build_mode(spec));
    rec.details["norm"] = ps.norm();
    switch (spec.quantity) {
        case Quantity::qcs:
            rec.value = qcs_photon_tuned(ps).qcs_squared;
            rec.method = to_string(QcsMethod::moment_engine);
            return rec;
        case Quantity::gain:
            rec.value = relative_gain(ps);
            rec.method = to_string(QcsMethod::moment_engine);
            return rec;
        case Quantity::negativity: {
            NegativityReport n;
            if (ps.modes() == 1) {
                n = negative_volume_single_mode(ps);
            } else {
                MonteCarloOptions mc;
                mc.seed = spec.seed;
                mc.stream = spec.stream;
                mc.threads = spec.threads;
                n = negative_volume_monte_carlo(ps, mc);
                rec.details["seed"] = spec.seed;
            }
            rec.value = n.volume;
            rec.method = to_string(n.method);
            rec.error_estimate = n.error_estimate;
            return rec;
        }
        case Quantity::classify:
            fill_classification(rec, classify(ps));
            return rec;
        case Quantity::qng: {
            const QngReport w = qng_witness(ps);
            rec.value = w.certified ? "certified-QNG" : "inconclusive";
            rec.method = "wigner-origin-witness";
            rec.details["wigner_origin"] = w.wigner_origin;
            rec.details["bound"] = w.bound;
            rec.details["mean_photon_number"] = w.mean_photon_number;
            return rec;
        }
        case Quantity::wigner0:
            rec.value = wigner_pm(ps, RVec::Zero(2 * ps.modes()));
            rec.method = "closed-form";
            return rec;
        default:
            throw DomainError(std::string("quantity '") + to_string(spec.quantity) +
                              "' is only defined for even/odd states");
    }
}

nlohmann::json to_json(const EvalRecord& rec) {
    nlohmann::json j;
    j["state"] = rec.state;
    j["quantity"] = rec.quantity;
    j["value"] = rec.value;
    j["method"] = rec.method;
    j["error_estimate"] = rec.error_estimate;
    if (!rec.details.empty()) j["details"] = rec.details;
    return j;
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double Range::at(int i) const {
    if (steps <= 1) return min;
    return min + (max - min) * static_cast<double>(i) / (steps - 1);
}

Range parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    auto num = [&](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) throw DomainError("range entry '" + s + "' is not a number");
        return v;
    };
    if (parts.size() != 3) throw DomainError("sweep range must be min:max:steps");
    Range r{num(parts[0]), num(parts[1]), 0};
    const double steps = num(parts[2]);
    if (steps != std::floor(steps) || steps < 2 || steps > 100000) {
        throw DomainError("sweep range needs an integer step count >= 2");
    }
    r.steps = static_cast<int>(steps);
    if (r.max < r.min) throw DomainError("sweep range needs min <= max");
    return r;
}

void run_sweep(const SweepSpec& spec, std::ostream& out) {
    const int total = spec.q.steps * spec.r.steps;
    struct Row {
        double q, r;
        EvalRecord rec;
        bool ok = true;
    };
    std::vector<Row> rows(total);
    std::atomic<int> next{0};
    std::exception_ptr fatal;
    std::mutex fatal_mutex;

    const int jobs = std::max(
        1, std::min(total, spec.jobs > 0 ? spec.jobs
                                         : static_cast<int>(std::thread::hardware_concurrency())));
    auto worker = [&] {
        for (int idx = next++; idx < total; idx = next++) {
            EvalSpec point = spec.base;
            point.q = spec.q.at(idx / spec.r.steps);
            point.r = spec.r.at(idx % spec.r.steps);
            point.stream = static_cast<std::uint64_t>(idx);
            point.threads = jobs > 1 ? 1 : spec.base.threads;
            rows[idx].q = point.q;
            rows[idx].r = point.r;
            try {
                rows[idx].rec = evaluate(point);
            } catch (const DomainError& e) {
                rows[idx].ok = false;
                rows[idx].rec.details["error"] = e.what();
            } catch (...) {
                std::lock_guard lock(fatal_mutex);
                if (!fatal) fatal = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (fatal) std::rethrow_exception(fatal);

    auto value_text = [](const Row& row) {
        if (!row.ok) return std::string("nan");
        if (row.rec.value.is_number()) return format_number(row.rec.value.get<double>());
        return row.rec.value.get<std::string>();
    };
    if (spec.format == Format::csv) out << "q,r,value,method,error_estimate\n";
    for (const Row& row : rows) {
        const std::string method = row.ok ? row.rec.method : "domain-error";
        if (spec.format == Format::csv) {
            out << format_number(row.q) << ',' << format_number(row.r) << ',' << value_text(row)
                << ',' << method << ',' << format_number(row.rec.error_estimate) << '\n';
        } else {
            // Numbers go through format_number so both formats carry the same digits.
            nlohmann::json j;
            j["q"] = nlohmann::json::parse(format_number(row.q));
            j["r"] = nlohmann::json::parse(format_number(row.r));
            if (!row.ok) {
                j["value"] = nullptr;
            } else if (row.rec.value.is_number()) {
                j["value"] = nlohmann::json::parse(value_text(row));
            } else {
                j["value"] = row.rec.value;
            }
            j["method"] = method;
            j["error_estimate"] = nlohmann::json::parse(format_number(row.rec.error_estimate));
            out << j.dump() << '\n';
        }
    }
    if (!out) throw OutputError("failed while writing sweep output");
}

}  // namespace gausspm
