#pragma once

// Monte-Carlo harness: per-trial deterministic RNG streams, a fixed-size chunked
// worker pool (so reports are identical for any worker count), failure-rate
// estimation with exact confidence intervals, and CSV/JSON reporting.

#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sumrank/bounds.hpp"
#include "sumrank/decode_hilrs.hpp"
#include "sumrank/decode_vilrs.hpp"
#include "sumrank/stats.hpp"

namespace sumrank {
namespace sim {

enum class Mode { vilrs, hilrs };

struct CodeSpec {
    std::uint64_t q = 3;
    int m = 4;
    int u = 1;
    std::vector<std::uint64_t> modulus;  // empty: deterministic default
    std::vector<int> partition = {4, 4};
    int k = 3;
    // optional explicit code, as gamma-power exponents; empty means random per
    // trial (or the deterministic default code when pinned)
    std::vector<std::int64_t> beta_exponents;
    std::vector<std::int64_t> xi_exponents;
};

struct ExperimentConfig {
    CodeSpec code;
    Mode mode = Mode::vilrs;
    int s = 4;
    int tau = -1;                 // error-only weight; ignored when the split is set
    int tF = -1, tR = -1, tC = -1;  // error-erasure split
    bool erasures() const { return tF >= 0 || tR >= 0 || tC >= 0; }
    // stop rule: exactly one of trials/failures is positive
    std::uint64_t trials = 0;
    std::uint64_t failures_target = 0;
    std::uint64_t trial_cap = 2000000;
    std::uint64_t seed = 1;
    int workers = 0;  // 0: hardware concurrency (SUMRANK_THREADS overrides upstream)
    bool pin_code = false;
    bool allow_beyond_radius = false;
    std::string out_path;
};

struct ExperimentReport {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;        // decoded != transmitted, detected or not
    std::uint64_t miscorrections = 0;  // caught by the re-encoding post-check
    std::uint64_t silent_wrong = 0;    // consistent output that differs from the truth
    double rate = 0.0, ci_lo = 0.0, ci_hi = 0.0;
    double bound_std = 0.0, bound_impr = 0.0;
    bool bound_violated = false;  // whole confidence interval above the standard bound
    double mean_erasure_attempts = 0.0;
    double runtime_s = 0.0;
    std::vector<std::uint64_t> modulus_used;
    ExperimentConfig cfg;
};

namespace detail {

inline LrsCode make_code(const FieldTower& T, const CodeSpec& spec, const LengthPartition& p, bool pinned,
                         Rng& rng) {
    if (!spec.beta_exponents.empty() || !spec.xi_exponents.empty()) {
        require(spec.beta_exponents.size() == static_cast<std::size_t>(p.n()) &&
                    spec.xi_exponents.size() == static_cast<std::size_t>(p.ell()),
                Err::ConfigError, "explicit beta/xi exponents must cover the code");
        std::vector<Fe> beta, xi;
        for (auto e : spec.beta_exponents) beta.push_back(T.gamma_pow(e));
        for (auto e : spec.xi_exponents) xi.push_back(T.gamma_pow(e));
        return LrsCode(T, std::move(beta), std::move(xi), p, spec.k);
    }
    if (pinned) return LrsCode::with_defaults(T, p, spec.k);
    std::uint64_t N = T.lv(Layer::qm).order();
    for (;;) {
        std::vector<Fe> beta(static_cast<std::size_t>(p.n()));
        for (auto& b : beta) b = T.el(rng.below(N));
        std::vector<Fe> xi;
        std::vector<std::uint64_t> used;
        while (static_cast<int>(xi.size()) < p.ell()) {
            std::uint64_t e = rng.below(T.q() - 1);
            bool dup = false;
            for (auto uu : used) dup = dup || uu == e;
            if (!dup) {
                used.push_back(e);
                xi.push_back(T.gamma_pow(static_cast<std::int64_t>(e)));
            }
        }
        try {
            return LrsCode(T, std::move(beta), std::move(xi), p, spec.k);
        } catch (const Error&) {
            continue;
        }
    }
}

struct TrialOutcome {
    bool wrong = false;
    bool post_check_caught = false;
    bool silent_wrong = false;
    int erasure_attempts = 0;
};

inline TrialOutcome run_trial(const FieldTower& T, const ExperimentConfig& cfg, const LengthPartition& p,
                              std::uint64_t trial) {
    Rng rng = Rng::for_trial(cfg.seed, trial);
    LrsCode code = make_code(T, cfg.code, p, cfg.pin_code, rng);
    TrialOutcome out;
    const int s = cfg.s;
    if (cfg.mode == Mode::vilrs) {
        Mat C(s, p.n(), Layer::qm);
        for (int j = 0; j < s; ++j) {
            std::vector<Fe> f(static_cast<std::size_t>(code.k()));
            for (auto& c : f) c = T.el(rng.below(T.lv(Layer::qm).order()));
            auto cw = code.encode(skew::make(T, std::move(f), Twist::theta));
            for (int c = 0; c < p.n(); ++c) C.at(j, c) = cw[static_cast<std::size_t>(c)];
        }
        if (!cfg.erasures()) {
            Mat E = weights::sample_vertical(T, rng, p, s, cfg.tau);
            Mat Y(s, p.n(), Layer::qm);
            for (std::size_t i = 0; i < Y.a.size(); ++i) Y.a[i] = T.add(C.a[i], E.a[i]);
            auto res = vilrs::decode_errors(code, Y, rng);
            if (res.status != vilrs::Status::ok) {
                out.wrong = true;
                out.post_check_caught = res.status == vilrs::Status::post_check_failed;
            } else if (!(res.codeword == C)) {
                out.wrong = out.silent_wrong = true;
            }
        } else {
            auto inst = weights::make_erasure_vertical(T, p, s, cfg.tF, cfg.tR, cfg.tC, rng);
            out.erasure_attempts = inst.attempts;
            Mat Y(s, p.n(), Layer::qm);
            for (std::size_t i = 0; i < Y.a.size(); ++i) Y.a[i] = T.add(C.a[i], inst.error.a[i]);
            vilrs::ErasureSide side{inst.A_R, inst.tR_part, inst.B_C, inst.tC_part};
            auto res = vilrs::decode_errors_erasures(code, Y, side, rng);
            if (res.status != vilrs::Status::ok) {
                out.wrong = true;
                out.post_check_caught = res.status == vilrs::Status::post_check_failed;
            } else if (!(res.codeword == C)) {
                out.wrong = out.silent_wrong = true;
            }
        }
    } else {
        std::vector<Fe> c;
        for (int j = 0; j < s; ++j) {
            std::vector<Fe> f(static_cast<std::size_t>(code.k()));
            for (auto& cc : f) cc = T.el(rng.below(T.lv(Layer::qm).order()));
            auto cw = code.encode(skew::make(T, std::move(f), Twist::theta));
            c.insert(c.end(), cw.begin(), cw.end());
        }
        if (!cfg.erasures()) {
            auto e = weights::sample_horizontal(T, rng, p, s, cfg.tau);
            std::vector<Fe> y(c.size());
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = T.add(c[i], e[i]);
            auto res = hilrs::decode_errors(code, y, s, rng);
            if (res.status != hilrs::Status::ok) {
                out.wrong = true;
                out.post_check_caught = res.status == hilrs::Status::post_check_failed;
            } else if (!(res.codeword == c)) {
                out.wrong = out.silent_wrong = true;
            }
        } else {
            auto inst = weights::make_erasure_horizontal(T, p, s, cfg.tF, cfg.tR, cfg.tC, rng);
            out.erasure_attempts = inst.attempts;
            std::vector<Fe> y(c.size());
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = T.add(c[i], inst.error[i]);
            hilrs::ErasureSide side{inst.a_R, inst.tR_part, inst.B_C, inst.tC_part};
            auto res = hilrs::decode_errors_erasures(code, y, s, side, rng);
            if (res.status != hilrs::Status::ok) {
                out.wrong = true;
                out.post_check_caught = res.status == hilrs::Status::post_check_failed;
            } else if (!(res.codeword == c)) {
                out.wrong = out.silent_wrong = true;
            }
        }
    }
    return out;
}

}  // namespace detail

inline double effective_weight(const ExperimentConfig& cfg) {
    if (!cfg.erasures()) return static_cast<double>(cfg.tau);
    double frac = static_cast<double>(cfg.s) / (cfg.s + 1);
    // conservative effective weight: per-component erasure weights bounded by the totals
    return cfg.tF + frac * (cfg.tR + cfg.tC);
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    require((cfg.trials > 0) != (cfg.failures_target > 0), Err::ConfigError,
            "exactly one stop rule: --trials or --failures");
    require(cfg.s >= 1, Err::ConfigError, "interleaving order must be >= 1");
    require(cfg.erasures() ? (cfg.tF >= 0 && cfg.tR >= 0 && cfg.tC >= 0) : cfg.tau >= 0, Err::ConfigError,
            "set either tau or the full (tF, tR, tC) split");
    LengthPartition p(cfg.code.partition);
    require(cfg.code.k >= 1 && cfg.code.k < p.n(), Err::ConfigError, "need 1 <= k < n");
    double tmax = bounds::radius_max(cfg.s, p.n(), cfg.code.k);
    if (!cfg.allow_beyond_radius)
        require(effective_weight(cfg) <= tmax + 1e-12, Err::ConfigError,
                "weight beyond the decoding radius (--beyond-radius to override)");

    FieldTower::Params tprm;
    tprm.q = cfg.code.q;
    tprm.m = cfg.code.m;
    tprm.u = cfg.code.u;
    tprm.modulus_qm = cfg.code.modulus;
    tprm.s = cfg.erasures() ? cfg.s : 0;
    FieldTower T(tprm);

    auto t0 = std::chrono::steady_clock::now();
    int workers = cfg.workers > 0 ? cfg.workers : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;

    std::uint64_t done = 0, failures = 0, miscorrections = 0, silent = 0;
    std::uint64_t attempts_sum = 0, attempts_cnt = 0;
    // fixed chunk size keeps the processed prefix (and so the report) independent
    // of the worker count
    const std::uint64_t chunk = 1024;
    std::uint64_t base = 0;
    bool stop = false;
    while (!stop) {
        std::uint64_t hi = cfg.trials > 0 ? std::min(cfg.trials, base + chunk) : std::min(cfg.trial_cap, base + chunk);
        if (base >= hi) break;
        std::atomic<std::uint64_t> next(base);
        std::atomic<std::uint64_t> fail_acc(0), misc_acc(0), silent_acc(0), att_acc(0), attn_acc(0);
        auto work = [&] {
            for (;;) {
                std::uint64_t i = next.fetch_add(1);
                if (i >= hi) break;
                auto o = detail::run_trial(T, cfg, p, i);
                if (o.wrong) fail_acc.fetch_add(1);
                if (o.post_check_caught) misc_acc.fetch_add(1);
                if (o.silent_wrong) silent_acc.fetch_add(1);
                if (o.erasure_attempts > 0) {
                    att_acc.fetch_add(static_cast<std::uint64_t>(o.erasure_attempts));
                    attn_acc.fetch_add(1);
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
        for (auto& th : pool) th.join();
        done += hi - base;
        failures += fail_acc.load();
        miscorrections += misc_acc.load();
        silent += silent_acc.load();
        attempts_sum += att_acc.load();
        attempts_cnt += attn_acc.load();
        base = hi;
        if (cfg.trials > 0)
            stop = done >= cfg.trials;
        else
            stop = failures >= cfg.failures_target || done >= cfg.trial_cap;
    }

    ExperimentReport rep;
    rep.cfg = cfg;
    rep.trials = done;
    rep.failures = failures;
    rep.miscorrections = miscorrections;
    rep.silent_wrong = silent;
    rep.rate = done ? static_cast<double>(failures) / static_cast<double>(done) : 0.0;
    auto ci = stats::clopper_pearson(failures, std::max<std::uint64_t>(done, 1));
    rep.ci_lo = ci.first;
    rep.ci_hi = ci.second;
    double te = effective_weight(cfg);
    if (te <= tmax + 1e-12) {
        rep.bound_std = bounds::standard(cfg.code.q, cfg.code.m, p.ell(), cfg.s, p.n(), cfg.code.k, te);
        rep.bound_impr = bounds::improved(cfg.code.q, cfg.code.m, p.ell(), cfg.s, p.n(), cfg.code.k, te);
        rep.bound_violated = rep.ci_lo > rep.bound_std;
    }
    rep.modulus_used = T.params().modulus_qm;
    rep.mean_erasure_attempts =
        attempts_cnt ? static_cast<double>(attempts_sum) / static_cast<double>(attempts_cnt) : 0.0;
    rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline std::string csv_header() {
    return "mode,q,m,l,s,k,n,tau,tf,tr,tc,trials,failures,miscorrections,rate,ci_lo,ci_hi,bound_std,"
           "bound_impr,seed,runtime_s";
}

inline std::string csv_row(const ExperimentReport& r) {
    LengthPartition p(r.cfg.code.partition);
    std::ostringstream os;
    os.precision(6);
    os << std::scientific;
    os << (r.cfg.mode == Mode::vilrs ? "vilrs" : "hilrs") << ',' << r.cfg.code.q << ',' << r.cfg.code.m << ','
       << p.ell() << ',' << r.cfg.s << ',' << r.cfg.code.k << ',' << p.n() << ','
       << (r.cfg.erasures() ? -1 : r.cfg.tau) << ',' << r.cfg.tF << ',' << r.cfg.tR << ',' << r.cfg.tC << ','
       << r.trials << ',' << r.failures << ',' << r.miscorrections << ',' << r.rate << ',' << r.ci_lo << ','
       << r.ci_hi << ',' << r.bound_std << ',' << r.bound_impr << ',' << r.cfg.seed << ',' << r.runtime_s;
    return os.str();
}

inline std::string json_sidecar(const ExperimentReport& r) {
    std::ostringstream os;
    os.precision(12);
    auto jb = [](bool b) { return b ? "true" : "false"; };
    os << "{\n";
    os << "  \"mode\": \"" << (r.cfg.mode == Mode::vilrs ? "vilrs" : "hilrs") << "\",\n";
    os << "  \"q\": " << r.cfg.code.q << ", \"m\": " << r.cfg.code.m << ", \"u\": " << r.cfg.code.u << ",\n";
    os << "  \"partition\": [";
    for (std::size_t i = 0; i < r.cfg.code.partition.size(); ++i)
        os << (i ? ", " : "") << r.cfg.code.partition[i];
    os << "],\n";
    os << "  \"k\": " << r.cfg.code.k << ", \"s\": " << r.cfg.s << ",\n";
    os << "  \"tau\": " << r.cfg.tau << ", \"tF\": " << r.cfg.tF << ", \"tR\": " << r.cfg.tR
       << ", \"tC\": " << r.cfg.tC << ",\n";
    os << "  \"trials\": " << r.trials << ", \"failures\": " << r.failures
       << ", \"miscorrections\": " << r.miscorrections << ", \"silent_wrong\": " << r.silent_wrong << ",\n";
    os << "  \"rate\": " << r.rate << ", \"ci_lo\": " << r.ci_lo << ", \"ci_hi\": " << r.ci_hi << ",\n";
    os << "  \"bound_std\": " << r.bound_std << ", \"bound_impr\": " << r.bound_impr
       << ", \"bound_violated\": " << jb(r.bound_violated) << ",\n";
    os << "  \"modulus\": [";
    for (std::size_t i = 0; i < r.modulus_used.size(); ++i) os << (i ? ", " : "") << r.modulus_used[i];
    os << "],\n";
    os << "  \"mean_erasure_attempts\": " << r.mean_erasure_attempts << ",\n";
    os << "  \"pin_code\": " << jb(r.cfg.pin_code) << ", \"seed\": " << r.cfg.seed << ",\n";
    os << "  \"runtime_s\": " << r.runtime_s << "\n";
    os << "}\n";
    return os.str();
}

inline void write_outputs(const ExperimentReport& r) {
    if (r.cfg.out_path.empty()) return;
    bool fresh = !std::ifstream(r.cfg.out_path).good();
    std::ofstream csv(r.cfg.out_path, std::ios::app);
    require(csv.good(), Err::ConfigError, "cannot open output path");
    if (fresh) csv << csv_header() << '\n';
    csv << csv_row(r) << '\n';
    std::ofstream js(r.cfg.out_path + ".json");
    js << json_sidecar(r);
}

}  // namespace sim
}  // namespace sumrank
