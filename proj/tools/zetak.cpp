// Command-line front end: construction sweeps, pair-sum reports, verification
// suites, kernel checks, and guided large-value searches.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetak/galsums.hpp"
#include "zetak/kernel.hpp"
#include "zetak/lfunc.hpp"
#include "zetak/resonator.hpp"
#include "zetak/search.hpp"

using nlohmann::json;
using namespace zetak;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
    std::string format = "text"; // text | csv | jsonl
    std::string output;          // empty = stdout
    std::string cache_dir;
    std::string run_ledger;
    int threads = 1;
    double tolerance = 1e-8;
};

std::ostream& open_output(const GlobalOpts& g, std::ofstream& file) {
    if (g.output.empty()) return std::cout;
    file.open(g.output, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file " + g.output);
    return file;
}

std::string cache_path(const GlobalOpts& g, const std::string& name) {
    if (g.cache_dir.empty()) return {};
    std::filesystem::create_directories(g.cache_dir);
    return (std::filesystem::path(g.cache_dir) / name).string();
}

void append_provenance(const GlobalOpts& g, const std::string& command,
                       const std::string& params, double wall_ms) {
    std::string path = g.run_ledger;
    if (path.empty())
        path = g.cache_dir.empty() ? "zetak_runs.log"
                                   : (std::filesystem::path(g.cache_dir) / "runs.log").string();
    std::ofstream ledger(path, std::ios::app);
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    ledger << stamp << " command=" << command << " params=[" << params << "] version=" << kVersion
           << " wall_ms=" << static_cast<long>(wall_ms) << "\n";
}

// Set construction with the cache-dir round trip: a content hash of the
// parameters keys the artifact, and a corrupt file triggers a rebuild.
ResonatorSet obtain_set(const GlobalOpts& g, std::uint64_t d, std::uint64_t n, double u, double b,
                        double gamma, double lambda) {
    auto params = build_params(d, n, u, b, gamma, lambda);
    char key[256];
    std::snprintf(key, sizeof key, "d=%llu N=%llu u=%.17g b=%.17g gamma=%.17g lambda=%.17g",
                  static_cast<unsigned long long>(d), static_cast<unsigned long long>(n), params.u,
                  params.b, params.gamma, params.lambda);
    std::string path = cache_path(g, "set_" + std::to_string(fnv1a64(key)) + ".txt");
    if (!path.empty() && std::filesystem::exists(path)) {
        std::ifstream in(path);
        try {
            return parse_set(in);
        } catch (const std::exception& e) {
            std::cerr << "cache: rebuilding resonator set (" << e.what() << ")\n";
        }
    }
    auto set = build_set(params);
    if (!path.empty()) {
        std::ofstream out(path, std::ios::trunc);
        out << serialize_set(set);
    }
    return set;
}

json report_json(const GalSumReport& rep) {
    json j;
    j["d"] = rep.d;
    j["N"] = rep.n;
    j["m_size"] = rep.m_size;
    j["s_half_weighted"] = rep.s_half_weighted;
    j["s_third_weighted"] = rep.s_third_weighted;
    if (rep.s_alpha_plain) j["s_alpha_plain"] = *rep.s_alpha_plain;
    j["normalized"] = rep.normalized;
    j["beta_empirical"] = rep.beta_empirical;
    j["beta_theoretical"] = rep.beta_theoretical;
    j["h"] = rep.h;
    j["lcal_n"] = rep.lcal_n;
    return j;
}

long resolve_threads(int threads) {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<long>(hw) : 1;
}

// ---------------------------------------------------------------------------

int cmd_coeffs(const GlobalOpts& g, std::uint64_t d, std::uint64_t n_max, bool check_oracle) {
    std::vector<std::int64_t> table;
    std::string path = cache_path(g, "coeffs_d" + std::to_string(d) + "_n" +
                                         std::to_string(n_max) + ".csv");
    if (!path.empty() && std::filesystem::exists(path)) {
        std::ifstream in(path);
        try {
            table = read_coefficient_csv(in);
            if (table.size() != n_max + 1) table.clear();
        } catch (const std::exception&) {
            table.clear();
        }
    }
    if (table.empty()) {
        table = coefficient_table(n_max, d);
        if (!path.empty()) {
            std::ofstream out(path, std::ios::trunc);
            write_coefficient_csv(out, table);
        }
    }
    if (check_oracle) {
        auto oracle = coefficient_oracle(n_max, d);
        for (std::uint64_t n = 1; n <= n_max; ++n)
            if (oracle[n] != table[n])
                throw std::runtime_error("coefficient oracle mismatch at n = " + std::to_string(n));
        std::cerr << "oracle check passed for n <= " << n_max << "\n";
    }
    std::ofstream file;
    auto& os = open_output(g, file);
    if (g.format == "jsonl") {
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            json j;
            j["n"] = n;
            j["a"] = table[n];
            os << j.dump() << "\n";
        }
    } else {
        write_coefficient_csv(os, table);
    }
    return 0;
}

int cmd_construct(const GlobalOpts& g, std::uint64_t d, std::uint64_t n, double u, double b,
                  double gamma, double lambda) {
    auto set = obtain_set(g, d, n, u, b, gamma, lambda);
    std::ofstream file;
    auto& os = open_output(g, file);
    os << serialize_set(set);
    std::cerr << "|M| = " << set.elements.size() << " (N = " << n << ", levels = "
              << set.params.k_levels << ")\n";
    if (set.params.d_outside_regime)
        std::cerr << "warning: d exceeds (log log N)^2, construction degenerates\n";
    return 0;
}

int cmd_galsum(const GlobalOpts& g, std::uint64_t d, std::uint64_t n, double u, double b,
               double gamma, double lambda, double plain_alpha, int truncation_points) {
    auto set = obtain_set(g, d, n, u, b, gamma, lambda);
    auto rep = make_report(set, static_cast<int>(resolve_threads(g.threads)),
                           plain_alpha > 0 ? std::optional<double>(plain_alpha) : std::nullopt,
                           truncation_points);
    std::ofstream file;
    auto& os = open_output(g, file);
    if (g.format == "csv")
        os << report_csv_header() << "\n" << report_csv_row(rep) << "\n";
    else if (g.format == "jsonl")
        os << report_json(rep).dump() << "\n";
    else
        os << report_to_text(rep);
    return 0;
}

int cmd_kernel(const GlobalOpts& g, int eta, double epsilon, double t_horizon, bool check,
               int grid_points) {
    KernelParams kp{eta, epsilon, t_horizon};
    kp.validate();
    double hat0 = kernel_hat(0.0, kp);
    std::ofstream file;
    auto& os = open_output(g, file);
    char buf[260];
    std::snprintf(buf, sizeof buf,
                  "eta = %d\nepsilon = %.17g\nT = %.17g\nc = %.17g\nband_limit = %.17g\n"
                  "hat_at_zero = %.17g\nsqrt_3pi_over_eta = %.17g\n",
                  eta, epsilon, t_horizon, kp.c(), kp.band_limit(), hat0,
                  std::sqrt(3.0 * M_PI / eta));
    os << buf;
    if (check) {
        std::vector<double> grid;
        for (int i = 0; i < grid_points; ++i)
            grid.push_back(kp.band_limit() * i / std::max(1, grid_points - 1));
        bool ok = check_kernel_hat_properties(kp, grid);
        os << "properties = " << (ok ? "pass" : "fail") << "\n";
        if (!ok) throw std::runtime_error("kernel transform property check failed");
    }
    return 0;
}

int cmd_search(const GlobalOpts& g, std::uint64_t d, double t_horizon, long budget,
               std::uint64_t seed, double beta, double u, double b, double gamma, double lambda,
               const std::string& results_path) {
    auto n = static_cast<std::uint64_t>(std::floor(std::pow(t_horizon, 1.0 - beta)));
    auto set = obtain_set(g, d, n, u, b, gamma, lambda);
    EvalConfig cfg;
    cfg.tolerance = g.tolerance;
    auto result = search_large_values(d, t_horizon, set, budget, seed, cfg,
                                      static_cast<int>(resolve_threads(g.threads)));
    std::ofstream file;
    auto& os = open_output(g, file);
    if (g.format == "csv")
        os << search_csv_header() << "\n" << search_csv_row(result, t_horizon, d) << "\n";
    else if (g.format == "jsonl") {
        json j;
        j["seed"] = result.seed;
        j["T"] = t_horizon;
        j["d"] = d;
        j["budget"] = result.budget;
        j["t_star"] = result.t_star;
        j["zeta_abs"] = result.zeta_abs;
        j["baseline_max"] = result.baseline_max;
        j["reference"] = result.reference;
        os << j.dump() << "\n";
    } else
        os << search_to_text(result);
    if (!results_path.empty()) {
        bool fresh = !std::filesystem::exists(results_path);
        std::ofstream ledger(results_path, std::ios::app);
        if (fresh) ledger << search_csv_header() << "\n";
        ledger << search_csv_row(result, t_horizon, d) << "\n";
    }
    return 0;
}

int cmd_sweep(const GlobalOpts& g, std::uint64_t d, std::uint64_t n_lo, std::uint64_t n_hi,
              double factor, double u, double b, double gamma, double lambda) {
    if (n_hi < n_lo) throw std::invalid_argument("sweep: need n-hi >= n-lo");
    std::ofstream file;
    auto& os = open_output(g, file);
    os << report_csv_header() << "\n";
    std::vector<double> xs, ys;
    double phi = static_cast<double>(euler_phi(d));
    for (std::uint64_t n = n_lo; n <= n_hi;
         n = std::max(n + 1, static_cast<std::uint64_t>(std::llround(n * factor)))) {
        auto set = obtain_set(g, d, n, u, b, gamma, lambda);
        auto rep = make_report(set, static_cast<int>(resolve_threads(g.threads)));
        os << report_csv_row(rep) << "\n";
        // x-axis: phi(d) sqrt(log N log3 N / log2 N)
        double l1 = std::log(static_cast<double>(n));
        xs.push_back(phi * std::sqrt(l1 * iterated_log(static_cast<double>(n), 3) /
                                     iterated_log(static_cast<double>(n), 2)));
        ys.push_back(std::log(rep.normalized));
    }
    if (xs.size() < 2) {
        os << "# slope = null (need at least two points)\n";
        return 0;
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    char buf[80];
    std::snprintf(buf, sizeof buf, "# slope = %.17g\n", num / den);
    os << buf;
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite, std::uint64_t d, std::uint64_t n,
               long pairs, std::uint64_t seed, std::uint64_t n_max, double x_limit, int eta,
               double epsilon, double t_horizon, int grid_points, const std::string& grid_out) {
    long violations = 0;
    std::ostringstream detail;

    if (suite == "coefficient-oracle") {
        auto table = coefficient_table(n_max, d);
        auto oracle = coefficient_oracle(n_max, d);
        for (std::uint64_t i = 1; i <= n_max; ++i)
            if (table[i] != oracle[i]) ++violations;
        detail << "compared n <= " << n_max;
    } else if (suite == "coefficient-bound") {
        auto pool = sieve_primes_in_ap(2, 10000, d, 1);
        std::uint64_t counter = 0;
        auto draw = [&](std::uint64_t stream) {
            std::vector<PrimePower> f;
            int want = static_cast<int>(splitmix64(seed + stream, counter++) % 5);
            std::vector<std::uint64_t> chosen;
            while (static_cast<int>(chosen.size()) < want) {
                auto p = pool[splitmix64(seed + stream, counter++) % pool.size()];
                if (std::find(chosen.begin(), chosen.end(), p) == chosen.end())
                    chosen.push_back(p);
            }
            std::sort(chosen.begin(), chosen.end());
            for (auto p : chosen) f.push_back({p, 1});
            return FactoredInteger::from_factors(std::move(f));
        };
        for (long i = 0; i < pairs; ++i)
            if (!check_coefficient_product_bound(draw(1), draw(2), d)) ++violations;
        detail << pairs << " random squarefree pairs";
    } else if (suite == "pair-bound" || suite == "gcd-identity") {
        auto params = build_params(d, n);
        long level = 1;
        for (std::size_t k = 0; k < params.components.size(); ++k)
            if (params.components[k].j_budget >= 2 && !params.components[k].primes.empty()) {
                level = static_cast<long>(k + 1);
                break;
            }
        auto elements = build_component_elements(params.components[level - 1].primes,
                                                 params.components[level - 1].j_budget);
        std::uint64_t counter = 0;
        for (long i = 0; i < pairs; ++i) {
            const auto& m = elements[splitmix64(seed, counter++) % elements.size()];
            const auto& m2 = elements[splitmix64(seed + 1, counter++) % elements.size()];
            bool ok = suite == "pair-bound" ? check_pair_weight_bound(params, level, m, m2)
                                            : check_component_gcd_identity(params, level, m, m2);
            if (!ok) ++violations;
        }
        detail << pairs << " pairs from level " << level << " (|component| = " << elements.size()
               << ")";
    } else if (suite == "component-bound") {
        auto pool = sieve_primes_in_ap(2, 300, d, 1);
        std::uint64_t counter = 0;
        for (long i = 0; i < pairs; ++i) {
            int np = 1 + static_cast<int>(splitmix64(seed, counter++) % 4);
            std::vector<std::uint64_t> primes;
            while (static_cast<int>(primes.size()) < np) {
                auto p = pool[splitmix64(seed, counter++) % pool.size()];
                if (std::find(primes.begin(), primes.end(), p) == primes.end())
                    primes.push_back(p);
            }
            std::sort(primes.begin(), primes.end());
            long budget = 2 * static_cast<long>(splitmix64(seed, counter++) % 3);
            if (!check_component_lower_bound(primes, budget, d)) ++violations;
        }
        detail << pairs << " tiny component instances";
    } else if (suite == "rankin") {
        auto set = obtain_set(g, d, n, kDefaultU, kDefaultB, kDefaultGamma, 0.0);
        double max_x = std::exp(max_ratio_log(set.elements));
        for (int i = 0; i <= grid_points; ++i) {
            double x = std::pow(max_x, static_cast<double>(i) / grid_points);
            if (!rankin_check(set.elements, d, x, static_cast<int>(resolve_threads(g.threads))))
                ++violations;
        }
        detail << (grid_points + 1) << " cutoffs up to " << max_x;
    } else if (suite == "ap-density") {
        double ratio = siegel_walfisz_ratio(x_limit, d);
        detail << "ratio = " << ratio;
        if (x_limit >= 1e6 && (ratio < 0.95 || ratio > 1.05)) ++violations;
    } else if (suite == "orthogonality") {
        for (const auto& chi : character_group(d)) {
            std::complex<double> sum = 0;
            for (std::uint64_t r = 1; r <= d; ++r) sum += chi(r);
            double expect = chi.is_principal() ? static_cast<double>(euler_phi(d)) : 0.0;
            if (std::abs(sum - expect) > 1e-10) ++violations;
        }
        detail << euler_phi(d) << " characters";
    } else if (suite == "consistency") {
        EvalConfig prod;
        prod.tolerance = 1e-10;
        EvalConfig dir;
        dir.smoothing = Smoothing::kSmoothCutoff;
        for (double t : {10.0, 20.0, 50.0}) {
            auto p = dedekind_zeta_value({0.5, t}, d, prod);
            auto x = direct_length_for({0.5, t}, d, 1e-7 * std::abs(p));
            auto v = dedekind_zeta_direct({0.5, t}, d, x, dir);
            double rel = std::abs(p - v.value) / std::abs(p);
            detail << "t=" << t << " rel=" << rel << " ";
            if (rel > 1e-6) ++violations;
        }
        if (!grid_out.empty()) {
            std::ofstream gridfile(grid_out, std::ios::trunc);
            write_zeta_grid_csv(gridfile, d, {10.0, 20.0, 50.0}, prod);
        }
    } else if (suite == "kernel") {
        KernelParams kp{eta, epsilon, t_horizon};
        std::vector<double> grid;
        for (int i = 0; i < grid_points; ++i)
            grid.push_back(kp.band_limit() * i / std::max(1, grid_points - 1));
        if (!check_kernel_hat_properties(kp, grid)) ++violations;
        detail << "hat(0) = " << kernel_hat(0.0, kp);
    } else {
        throw std::invalid_argument("unknown verify suite: " + suite);
    }

    std::ofstream file;
    auto& os = open_output(g, file);
    os << "suite = " << suite << "\nviolations = " << violations << "\n";
    if (!detail.str().empty()) os << "detail = " << detail.str() << "\n";
    if (violations) throw std::runtime_error("verification suite reported violations");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gal-sum resonator toolkit for Dedekind zeta extremes on the critical line"};
    app.require_subcommand(1);
    app.set_config("--config", "", "plain key = value configuration file, # comments");
    app.set_version_flag("--version", kVersion);

    GlobalOpts g;
    if (const char* env = std::getenv("ZETAK_CACHE_DIR")) g.cache_dir = env;
    app.add_option("--format", g.format, "output format: text, csv or jsonl")
        ->check(CLI::IsMember({"text", "csv", "jsonl"}))
        ->capture_default_str();
    app.add_option("--output", g.output, "write results to this file instead of stdout");
    app.add_option("--cache-dir", g.cache_dir,
                   "cache directory for prime tables, coefficient prefixes and sets "
                   "(env ZETAK_CACHE_DIR)");
    app.add_option("--run-ledger", g.run_ledger, "provenance log file (default: runs.log)");
    app.add_option("--threads", g.threads, "worker threads, 0 = auto")->capture_default_str();
    app.add_option("--tolerance", g.tolerance, "evaluation tolerance")->capture_default_str();

    std::uint64_t d = 3, n = 4096, seed = 1, n_max = 5000;
    double u = kDefaultU, b = kDefaultB, gamma = kDefaultGamma, lambda = 0.0;
    double t_horizon = 10000.0, epsilon = 0.05, beta = 0.0, x_limit = 1e7, factor = 2.0;
    double plain_alpha = 0.0;
    long budget = 2000, pairs = 10000;
    int eta = 4, grid_points = 200, truncation_points = 8;
    bool check_oracle = false, kernel_check = false;
    std::uint64_t n_lo = 256, n_hi = 16384;
    std::string suite = "coefficient-oracle", results_path, grid_out;

    auto add_construction = [&](CLI::App* c) {
        c->add_option("--d", d, "cyclotomic index d >= 3")->capture_default_str();
        c->add_option("--u", u, "interval growth, in (1, e]")->capture_default_str();
        c->add_option("--b", b, "budget scale, > 1")->capture_default_str();
        c->add_option("--gamma", gamma, "level exponent, in (0, 1)")->capture_default_str();
        c->add_option("--lambda", lambda, "restriction weight, 0 = optimal sqrt(h)/e");
    };

    auto* coeffs = app.add_subcommand(
        "coeffs", "Dedekind coefficients a(1..n-max); CSV columns: n,a");
    coeffs->add_option("--d", d)->capture_default_str();
    coeffs->add_option("--n-max", n_max)->capture_default_str();
    coeffs->add_flag("--check-oracle", check_oracle,
                     "cross-check against the character convolution");

    auto* construct = app.add_subcommand(
        "construct", "build the resonator set and emit its serialized form");
    add_construction(construct);
    construct->add_option("--N", n, "target cardinality bound N > 16")->capture_default_str();

    auto* galsum = app.add_subcommand(
        "galsum", "pair-sum report for a constructed set; CSV columns: " + report_csv_header());
    add_construction(galsum);
    galsum->add_option("--N", n)->capture_default_str();
    galsum->add_option("--alpha", plain_alpha, "also compute the unweighted sum at this exponent");
    galsum->add_option("--truncation-points", truncation_points)->capture_default_str();

    auto* kernel = app.add_subcommand("kernel", "smoothing kernel transform values and checks");
    kernel->add_option("--eta", eta)->capture_default_str();
    kernel->add_option("--epsilon", epsilon)->capture_default_str();
    kernel->add_option("--T", t_horizon)->capture_default_str();
    kernel->add_flag("--check", kernel_check, "run the transform property checks");
    kernel->add_option("--grid-points", grid_points)->capture_default_str();

    auto* search = app.add_subcommand(
        "search",
        "guided search for large |zeta_K(1/2+it)|; CSV columns: " + search_csv_header());
    add_construction(search);
    search->add_option("--T", t_horizon, "height horizon")->capture_default_str();
    search->add_option("--budget", budget, "zeta evaluations for the guided arm")
        ->capture_default_str();
    search->add_option("--seed", seed)->capture_default_str();
    search->add_option("--beta", beta, "N = floor(T^(1-beta))")->capture_default_str();
    search->add_option("--results", results_path, "append the CSV row to this ledger");

    auto* verify = app.add_subcommand("verify", "verification suites; exit 0 means no violations");
    verify->add_option("--suite", suite,
                       "one of: coefficient-oracle, coefficient-bound, pair-bound, gcd-identity, "
                       "component-bound, rankin, ap-density, orthogonality, consistency, kernel")
        ->capture_default_str();
    verify->add_option("--d", d)->capture_default_str();
    verify->add_option("--N", n)->capture_default_str();
    verify->add_option("--pairs", pairs)->capture_default_str();
    verify->add_option("--seed", seed)->capture_default_str();
    verify->add_option("--n-max", n_max)->capture_default_str();
    verify->add_option("--x", x_limit, "sieve limit for ap-density")->capture_default_str();
    verify->add_option("--eta", eta)->capture_default_str();
    verify->add_option("--epsilon", epsilon)->capture_default_str();
    verify->add_option("--T", t_horizon)->capture_default_str();
    verify->add_option("--grid-points", grid_points)->capture_default_str();
    verify->add_option("--emit-grid", grid_out, "write the consistency grid CSV here");

    auto* sweep = app.add_subcommand(
        "sweep", "geometric N sweep of pair-sum reports plus the trend slope; CSV columns: " +
                     report_csv_header());
    add_construction(sweep);
    sweep->add_option("--n-lo", n_lo)->capture_default_str();
    sweep->add_option("--n-hi", n_hi)->capture_default_str();
    sweep->add_option("--factor", factor, "geometric step")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 1;
    }

    auto started = std::chrono::steady_clock::now();
    std::ostringstream params;
    for (int i = 1; i < argc; ++i) params << (i > 1 ? " " : "") << argv[i];
    std::string command = app.get_subcommands().front()->get_name();

    int status = 0;
    try {
        if (coeffs->parsed())
            status = cmd_coeffs(g, d, n_max, check_oracle);
        else if (construct->parsed())
            status = cmd_construct(g, d, n, u, b, gamma, lambda);
        else if (galsum->parsed())
            status = cmd_galsum(g, d, n, u, b, gamma, lambda, plain_alpha, truncation_points);
        else if (kernel->parsed())
            status = cmd_kernel(g, eta, epsilon, t_horizon, kernel_check, grid_points);
        else if (search->parsed())
            status = cmd_search(g, d, t_horizon, budget, seed, beta, u, b, gamma, lambda,
                                results_path);
        else if (verify->parsed())
            status = cmd_verify(g, suite, d, n, pairs, seed, n_max, x_limit, eta, epsilon,
                                t_horizon, grid_points, grid_out);
        else if (sweep->parsed())
            status = cmd_sweep(g, d, n_lo, n_hi, factor, u, b, gamma, lambda);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        status = 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        status = 2;
    }

    double wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - started)
                         .count();
    append_provenance(g, command, params.str(), wall_ms);
    return status;
}
