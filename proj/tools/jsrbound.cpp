// jsrbound: certified spectral-radius and joint-spectral-radius enclosures
// for finite matrix sets, from exact semigroup power norms.
//
// Subcommands:
//   certify  one enclosure at a fixed product length n
//   sweep    enclosures for n = 1..n_max plus the running best
//   verify   singleton self-checks against the eigenvalue oracle
//   bench    seeded random ensembles, CSV of mean interval width ratios
//
// Exit codes: 0 success, 2 input parse/validation error, 3 enumeration
// budget exhausted, 4 verification failure.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jsrbounds/bounds.hpp"
#include "jsrbounds/ensemble.hpp"
#include "jsrbounds/io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerify = 4;

constexpr double kOracleSlack = 1e-8;  // relative slack against the eigen oracle

struct RunConfig {
    std::string file;
    std::string norm = "inf";
    std::string mode = "exact";
    std::uint64_t n = 1;
    std::uint64_t n_max = 8;
    std::uint64_t budget = jsr::EnumBudget{}.max_nodes;
    double tol = 0.0;
    std::uint64_t seed = 1;
    std::string format = "human";
    bool force_multi = false;
};

jsr::CertifyOptions make_options(const RunConfig& cfg) {
    jsr::CertifyOptions opts;
    opts.budget.max_nodes = cfg.budget;
    opts.force_multi_constant = cfg.force_multi;
    return opts;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

nlohmann::json interval_to_json(const jsr::CertifiedInterval& iv) {
    nlohmann::json j;
    j["n"] = iv.n;
    j["d"] = iv.params.d;
    j["r"] = iv.params.r;
    j["norm"] = std::string(jsr::norm_name(iv.norm));
    j["mode"] = std::string(jsr::mode_name(iv.mode));
    j["c_d"] = iv.params.c_d;
    j["sigma"] = iv.params.sigma;
    j["nu"] = iv.params.nu;
    j["forced_multi_constant"] = iv.params.forced_multi;
    j["set_norm"] = iv.set_norm_value;
    j["d_power_norm"] = iv.d_power.value();
    j["d_power_log2"] = iv.d_power.log2_norm();
    j["d_power_exact"] = iv.d_power.exact;
    j["n_power_log2"] = iv.n_power.log2_norm();
    j["n_power_exact"] = iv.n_power.exact;
    j["n_power_root"] = std::exp2(iv.n_power.log2_norm() / static_cast<double>(iv.n));
    j["lower"] = iv.lower;
    j["upper"] = iv.upper;
    j["lower_valid"] = iv.lower_valid;
    j["upper_valid"] = iv.upper_valid;
    j["exact_zero"] = iv.exact_zero;
    if (!iv.n_power.best_word.empty()) j["max_word"] = iv.n_power.best_word;
    return j;
}

void print_interval_human(const jsr::CertifiedInterval& iv, std::ostream& os) {
    os << "certify  n=" << iv.n << "  norm=" << jsr::norm_name(iv.norm)
       << "  mode=" << jsr::mode_name(iv.mode) << "\n";
    os << "  set: d=" << iv.params.d << ", r=" << iv.params.r;
    if (iv.params.d >= 2) {
        os << (iv.params.r == 1 && !iv.params.forced_multi
                   ? "  (singleton constant 2^d-1)"
                   : "  (multi constant d^(3d/2))");
    }
    os << "\n";
    if (iv.exact_zero) {
        os << "  exact zero (nilpotent by d-product test): rho(S) = 0\n";
        os << "  lower = 0\n  upper = 0\n";
        return;
    }
    os << "  C_d                   = " << fmt(iv.params.c_d) << "\n";
    os << "  sigma_d(n)            = " << fmt(iv.params.sigma) << "\n";
    os << "  nu_d(n)               = " << fmt(iv.params.nu) << "\n";
    os << "  ||S||                 = " << fmt(iv.set_norm_value) << "\n";
    os << "  ||S^d||               = " << fmt(iv.d_power.value())
       << (iv.d_power.exact ? "  (exact)" : "  (LOWER ESTIMATE, budget exhausted)") << "\n";
    os << "  ||S^n||^(1/n)         = "
       << fmt(std::exp2(iv.n_power.log2_norm() / static_cast<double>(iv.n)))
       << (iv.n_power.exact ? "  (exact)" : "  (LOWER ESTIMATE, budget exhausted)") << "\n";
    if (iv.params.d >= 2) {
        const double ratio_log2 = static_cast<double>(iv.params.d) * std::log2(iv.set_norm_value) -
                                  iv.d_power.log2_norm();
        os << "  ||S||^d / ||S^d||     = " << fmt(std::exp2(ratio_log2)) << "\n";
    }
    if (iv.lower_valid) {
        os << "  lower                 = " << fmt(iv.lower) << "\n";
    } else {
        os << "  lower                 = (omitted: enumeration budget exhausted)\n";
    }
    if (iv.upper_valid) {
        os << "  upper                 = " << fmt(iv.upper) << "\n";
    } else {
        os << "  upper                 = (omitted: enumeration budget exhausted)\n";
    }
    if (!iv.n_power.best_word.empty() && iv.n_power.best_word.size() <= 32) {
        os << "  max word (i_1..i_n)   =";
        for (int i : iv.n_power.best_word) os << " " << i;
        os << "\n";
    }
}

void print_interval_csv_row(const jsr::CertifiedInterval& iv, std::ostream& os) {
    os << iv.n << "," << (iv.lower_valid ? fmt(iv.lower) : "") << ","
       << (iv.upper_valid ? fmt(iv.upper) : "") << "," << fmt(iv.params.sigma) << ","
       << fmt(iv.params.nu) << "," << jsr::norm_name(iv.norm) << "," << jsr::mode_name(iv.mode)
       << "\n";
}

int interval_exit_code(const jsr::CertifiedInterval& iv) {
    return (iv.lower_valid && iv.upper_valid) ? kExitOk : kExitBudget;
}

int cmd_certify(const RunConfig& cfg) {
    const jsr::InputDocument doc = jsr::load_input(cfg.file);
    const jsr::MatrixSet set = jsr::to_matrix_set(doc);
    const jsr::CertifiedInterval iv =
        jsr::certify(set, cfg.n, jsr::parse_norm_kind(cfg.norm), jsr::parse_bound_mode(cfg.mode),
                     make_options(cfg));
    if (cfg.format == "json") {
        nlohmann::json j = interval_to_json(iv);
        j["command"] = "certify";
        std::cout << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::cout << "n,lower,upper,sigma,nu,norm,mode\n";
        print_interval_csv_row(iv, std::cout);
    } else {
        print_interval_human(iv, std::cout);
    }
    return interval_exit_code(iv);
}

int cmd_sweep(const RunConfig& cfg) {
    const jsr::InputDocument doc = jsr::load_input(cfg.file);
    const jsr::MatrixSet set = jsr::to_matrix_set(doc);
    const jsr::BoundSequence seq =
        jsr::sweep(set, cfg.n_max, jsr::parse_norm_kind(cfg.norm), jsr::parse_bound_mode(cfg.mode),
                   make_options(cfg));
    if (cfg.format == "json") {
        nlohmann::json j;
        j["command"] = "sweep";
        j["n_max"] = cfg.n_max;
        j["best_lower"] = seq.best_lower;
        j["best_upper"] = seq.best_upper;
        j["all_sides_valid"] = seq.all_sides_valid;
        j["intervals"] = nlohmann::json::array();
        for (const auto& iv : seq.intervals) j["intervals"].push_back(interval_to_json(iv));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "n,lower,upper,sigma,nu,norm,mode\n";
        for (const auto& iv : seq.intervals) print_interval_csv_row(iv, std::cout);
        std::cout << "# best_lower = " << fmt(seq.best_lower)
                  << "  best_upper = " << fmt(seq.best_upper) << "\n";
    }
    return seq.all_sides_valid ? kExitOk : kExitBudget;
}

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

int cmd_verify(const RunConfig& cfg) {
    const jsr::InputDocument doc = jsr::load_input(cfg.file);
    if (doc.matrices.size() != 1) {
        std::cerr << "verify: requires a singleton set (r = 1); got r = " << doc.matrices.size()
                  << ". The eigenvalue oracle only covers single matrices.\n";
        return kExitParse;
    }
    const jsr::MatrixSet set = jsr::to_matrix_set(doc);
    if (set.dim() > 16) {
        std::cerr << "verify: eigen oracle limited to d <= 16\n";
        return kExitParse;
    }
    const jsr::NormKind kind = jsr::parse_norm_kind(cfg.norm);
    const jsr::BoundMode mode = jsr::parse_bound_mode(cfg.mode);
    const jsr::CertifyOptions opts = make_options(cfg);

    const double rho = jsr::eigen_spectral_radius(set.member(0));
    const bool nilpotent = jsr::nilpotency_check(set, cfg.tol, opts.budget);

    std::vector<CheckLine> checks;
    for (std::uint64_t n = 1; n <= cfg.n_max; ++n) {
        const jsr::CertifiedInterval iv = jsr::certify(set, n, kind, mode, opts);
        CheckLine line;
        line.name = "enclosure n=" + std::to_string(n);
        if (!iv.lower_valid || !iv.upper_valid) {
            line.pass = false;
            line.detail = "budget exhausted";
        } else {
            line.pass = iv.lower <= rho * (1.0 + kOracleSlack) + 1e-300 &&
                        rho <= iv.upper * (1.0 + kOracleSlack) + 1e-300;
            line.detail = "lower=" + fmt(iv.lower) + " rho=" + fmt(rho) +
                          " upper=" + fmt(iv.upper);
        }
        checks.push_back(std::move(line));
    }

    {
        const jsr::BochiReport rep = jsr::bochi_check(set, rho, kind, opts);
        checks.push_back({"bochi d-product inequality", rep.holds,
                          "||S^d||=" + fmt(rep.lhs) + " <= C_d*rho*||S||^(d-1)=" + fmt(rep.rhs)});
    }

    if (rho > 0.0) {
        const auto steps = jsr::omega_recursion_check(set, rho, 2, kind, opts);
        for (const auto& st : steps) {
            checks.push_back({"omega recursion k=" + std::to_string(st.k), st.holds,
                              "log2 lhs=" + fmt(st.lhs_log2) + " <= log2 rhs=" + fmt(st.rhs_log2)});
        }
    } else {
        checks.push_back({"nilpotency (exact-zero path)", nilpotent,
                          nilpotent ? "all d-products vanish; omega recursion skipped (rho = 0)"
                                    : "oracle rho = 0 but d-products do not vanish"});
    }

    bool all_pass = true;
    if (cfg.format == "json") {
        nlohmann::json j;
        j["command"] = "verify";
        j["rho_oracle"] = rho;
        j["nilpotent"] = nilpotent;
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        }
        j["all_pass"] = all_pass;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "verify: rho_oracle = " << fmt(rho) << (nilpotent ? "  (nilpotent)" : "")
                  << "\n";
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            std::cout << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": " << c.detail
                      << "\n";
        }
    }
    return all_pass ? kExitOk : kExitVerify;
}

struct BenchCell {
    double ratio_sum = 0.0;
    std::uint64_t count = 0;
};

int cmd_bench(const RunConfig& cfg, const std::vector<int>& dims, int r,
              std::uint64_t instances) {
    const jsr::NormKind kind = jsr::parse_norm_kind(cfg.norm);
    const jsr::BoundMode mode = jsr::parse_bound_mode(cfg.mode);
    const jsr::CertifyOptions opts = make_options(cfg);

    std::uint64_t violations = 0;
    std::uint64_t exhausted = 0;

    std::cout << "d,r,n,mean_width_ratio\n";
    for (int d : dims) {
        // One seeded stream per (d, r) block, independent of other blocks.
        jsr::DiscEnsemble ens(jsr::DiscEnsemble::block_seed(cfg.seed, d, r));
        std::vector<BenchCell> cells(static_cast<std::size_t>(cfg.n_max) + 1);
        for (std::uint64_t i = 0; i < instances; ++i) {
            const jsr::MatrixSet s = ens.non_nilpotent_set(d, r);
            std::optional<double> rho;
            if (r == 1 && d <= 16) rho = jsr::eigen_spectral_radius(s.member(0));
            for (std::uint64_t n = 1; n <= cfg.n_max; ++n) {
                const jsr::CertifiedInterval iv = jsr::certify(s, n, kind, mode, opts);
                if (!iv.lower_valid || !iv.upper_valid) {
                    ++exhausted;
                    continue;
                }
                if (rho && (iv.lower > *rho * (1.0 + kOracleSlack) ||
                            *rho > iv.upper * (1.0 + kOracleSlack))) {
                    ++violations;
                }
                if (iv.lower > 0.0) {
                    cells[static_cast<std::size_t>(n)].ratio_sum += iv.upper / iv.lower;
                    cells[static_cast<std::size_t>(n)].count += 1;
                }
            }
        }
        for (std::uint64_t n = 1; n <= cfg.n_max; ++n) {
            const BenchCell& cell = cells[static_cast<std::size_t>(n)];
            if (cell.count == 0) continue;
            std::cout << d << "," << r << "," << n << ","
                      << fmt(cell.ratio_sum / static_cast<double>(cell.count)) << "\n";
        }
    }
    std::cerr << "bench: seed=" << cfg.seed << " instances=" << instances
              << " enclosure_violations=" << violations << " budget_exhausted=" << exhausted
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified spectral-radius enclosures for finite matrix sets"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<int> bench_dims{2};
    int bench_r = 1;
    std::uint64_t bench_instances = 10;

    auto add_common = [&cfg](CLI::App* sub, bool with_file) {
        if (with_file) {
            sub->add_option("file", cfg.file, "JSON matrix-set input file")->required();
        }
        sub->add_option("--norm", cfg.norm, "matrix norm: one | inf | two")
            ->check(CLI::IsMember({"one", "inf", "two"}));
        sub->add_option("--mode", cfg.mode, "bound mode: exact | closed")
            ->check(CLI::IsMember({"exact", "closed"}));
        sub->add_option("--budget", cfg.budget, "enumeration budget in word extensions");
        sub->add_flag("--force-multi-constant", cfg.force_multi,
                      "use the d^(3d/2) constant even for singletons");
        sub->add_option("--format", cfg.format, "output format: human | json | csv")
            ->check(CLI::IsMember({"human", "json", "csv"}));
    };

    CLI::App* certify = app.add_subcommand("certify", "one certified enclosure at length n");
    add_common(certify, true);
    certify->add_option("--n", cfg.n, "product length")->check(CLI::PositiveNumber);

    CLI::App* sweep = app.add_subcommand("sweep", "enclosures for n = 1..n_max");
    add_common(sweep, true);
    sweep->add_option("--n-max", cfg.n_max, "max product length")->check(CLI::PositiveNumber);

    CLI::App* verify = app.add_subcommand("verify", "singleton checks against the eigen oracle");
    add_common(verify, true);
    verify->add_option("--n-max", cfg.n_max, "max product length")->check(CLI::PositiveNumber);
    verify->add_option("--tol", cfg.tol, "nilpotency entry tolerance (default exact 0)");

    CLI::App* bench = app.add_subcommand("bench", "seeded random-ensemble width-ratio report");
    add_common(bench, false);
    bench->add_option("--seed", cfg.seed, "ensemble seed");
    bench->add_option("--dims", bench_dims, "matrix dimensions to sweep")->delimiter(',');
    bench->add_option("--r", bench_r, "set cardinality")->check(CLI::PositiveNumber);
    bench->add_option("--instances", bench_instances, "instances per (d, r) block");
    bench->add_option("--n-max", cfg.n_max, "max product length")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify->parsed()) return cmd_certify(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        if (bench->parsed()) return cmd_bench(cfg, bench_dims, bench_r, bench_instances);
    } catch (const jsr::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParse;
    } catch (const jsr::BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
