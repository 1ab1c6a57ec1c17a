#include "cli.hpp"

#include <fmt/format.h>
#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hyperband/bloch.hpp"
#include "hyperband/render.hpp"
#include "hyperband/tiling.hpp"
#include "hyperband/verify.hpp"

namespace hyperband::cli {
namespace {

// Raised for anything the user can fix by changing the command line or config file.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<long> parse_long(const std::string& s) {
    long v = 0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

std::optional<double> parse_double(const std::string& s) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

// "n" or "n/d"
std::optional<FluxParam> parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    const auto num = parse_long(slash == std::string::npos ? s : s.substr(0, slash));
    const auto den = slash == std::string::npos ? std::optional<long>(1) : parse_long(s.substr(slash + 1));
    if (!num || !den) return std::nullopt;
    if (*den == 0) throw UsageError("flux denominator must be nonzero");
    return FluxParam::from_ratio(*num, *den);
}

// Plain decimals like 0.7 are exact rationals; anything else falls back to a real.
std::optional<FluxParam> parse_exact_decimal(const std::string& s) {
    std::string digits;
    int frac = -1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '-' && i == 0) {
            digits += c;
        } else if (c == '.' && frac < 0) {
            frac = 0;
        } else if (c >= '0' && c <= '9') {
            digits += c;
            if (frac >= 0) ++frac;
        } else {
            return std::nullopt;
        }
    }
    if (frac > 12) return std::nullopt;
    const auto num = parse_long(digits);
    if (!num) return std::nullopt;
    long den = 1;
    for (int i = 0; i < std::max(frac, 0); ++i) den *= 10;
    return FluxParam::from_ratio(*num, den);
}

BlochMomentum parse_momentum(const std::string& s) {
    std::vector<double> k;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto v = parse_double(trim(part));
        if (!v) throw UsageError("momentum component '" + part + "' is not a real number");
        k.push_back(*v);
    }
    if (k.size() != 4) throw UsageError("--k expects four comma-separated reals, got '" + s + "'");
    return BlochMomentum(k[0], k[1], k[2], k[3]);
}

HamiltonianModel parse_model(const std::string& name, int m) {
    if (name == "reduced") return HamiltonianModel::reduced(m);
    if (name == "block-aniso") return HamiltonianModel::block_anisotropic();
    if (name == "block-iso") return HamiltonianModel::block_isotropic();
    throw UsageError("unknown model '" + name + "' (expected reduced, block-aniso or block-iso)");
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(fmt::format("{}:{}: expected key=value", path, lineno));
        }
        std::string key = trim(line.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(0, 1);
        if (key.empty()) throw UsageError(fmt::format("{}:{}: empty key", path, lineno));
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

// Config entries fill options the command line left unset. Options in the same group
// (e.g. B versus p/q) are skipped as a whole when any member was given as a flag.
void apply_config(CLI::App& sub, const std::string& path, const std::vector<std::set<std::string>>& groups) {
    const auto kv = read_config(path);
    auto on_command_line = [&](const std::string& key) {
        const CLI::Option* o = sub.get_option_no_throw("--" + key);
        return o != nullptr && o->count() > 0;
    };
    for (const auto& [key, value] : kv) {
        if (key == "config") throw UsageError("config files cannot include other config files");
        CLI::Option* opt = sub.get_option_no_throw("--" + key);
        if (opt == nullptr) {
            throw UsageError(fmt::format("unknown config key '{}' for '{}'", key, sub.get_name()));
        }
        if (opt->count() > 0) continue;
        bool shadowed = false;
        for (const auto& g : groups) {
            if (!g.count(key)) continue;
            for (const auto& other : g) shadowed = shadowed || on_command_line(other);
        }
        if (shadowed) continue;
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::Error& e) {
            throw UsageError(fmt::format("config key '{}': {}", key, e.what()));
        }
    }
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f.write(data.data(), static_cast<std::streamsize>(data.size()));
    f.close();
    if (!f) throw UsageError("failed writing '" + path + "'");
}

struct Flags {
    std::string config;
    int genus = 2;
    std::string B = "1/4";
    std::optional<long> p;
    std::optional<long> q;
    std::string model = "reduced";
    int m = 0;
    std::string k = "0,0,0,0";
    int depth = 2;
    long q_max = 20;
    int k_samples = 4;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out;
    VerifyTolerances tol;
};

FluxParam spectral_flux(const Flags& f, const CLI::App& sub) {
    const bool has_pq = f.p.has_value() || f.q.has_value();
    if (has_pq) {
        if (sub.get_option("--B")->count() > 0) throw UsageError("--B and --p/--q are mutually exclusive");
        if (!f.p || !f.q) throw UsageError("--p and --q must be given together");
        return FluxParam(*f.p, *f.q);
    }
    const auto flux = parse_rational(f.B);
    if (!flux) throw UsageError("--B must be a rational p/2q such as 1/4, got '" + f.B + "'");
    return *flux;
}

int cmd_verify(const Flags& f, std::ostream& out) {
    VerifyConfig cfg;
    cfg.genus = f.genus;
    cfg.tol = f.tol;
    std::optional<FluxParam> flux = parse_rational(f.B);
    if (!flux) flux = parse_exact_decimal(f.B);
    if (flux) {
        cfg.flux = flux;
        cfg.B = flux->B();
    } else {
        const auto real = parse_double(f.B);
        if (!real) throw UsageError("--B must be a rational or a finite real, got '" + f.B + "'");
        cfg.B = *real;
    }
    const VerifyReport report = run_verification(cfg);
    out << report.format();
    const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                      [](const CheckResult& c) { return !c.pass; });
    out << fmt::format("{} checks, {} failed\n", report.checks.size(), failed);
    return report.all_pass() ? kExitOk : kExitFail;
}

int cmd_tile(const Flags& f, std::ostream& out) {
    const TilingParams params(f.genus);
    const auto gens = make_generators(params);
    const auto dom = make_fundamental_domain(params);
    const auto tiles = enumerate_tiles(gens, f.depth);
    const std::string path = f.out.empty() ? "tiling.svg" : f.out;
    write_file(path, tiling_svg(dom, tiles));
    out << fmt::format("wrote {} tiles to {}\n", tiles.size(), path);
    return kExitOk;
}

int cmd_spectrum(const Flags& f, const CLI::App& sub, std::ostream& out) {
    const FluxParam flux = spectral_flux(f, sub);
    const HamiltonianModel model = parse_model(f.model, f.m);
    const BlochMomentum k = parse_momentum(f.k);
    if (model.dimension(flux.q()) > kMaxEigenDimension) {
        throw UsageError(fmt::format("matrix dimension {} exceeds the limit {}", model.dimension(flux.q()),
                                     kMaxEigenDimension));
    }
    const auto values = eigenvalues(assemble(model, flux, k));
    std::string text;
    for (double v : values) text += fmt::format("{:.12g}\n", v);
    out << text;
    return kExitOk;
}

int cmd_butterfly(const Flags& f, std::ostream& out) {
    const HamiltonianModel model = parse_model(f.model, f.m);
    SweepOptions opts;
    opts.q_max = f.q_max;
    opts.k_samples = f.k_samples;
    opts.seed = f.seed;
    opts.threads = f.threads;
    const auto start = std::chrono::steady_clock::now();
    const auto samples = butterfly_sweep(model, opts);
    const std::string csv = butterfly_csv(samples);
    const std::string path = f.out.empty() ? "butterfly.csv" : f.out;
    write_file(path, csv);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto rows = std::count(csv.begin(), csv.end(), '\n') - 1;
    out << fmt::format("samples={} rows={} wall_time={:.3f}s out={}\n", samples.size(), rows, wall, path);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Magnetic band theory on {4g,4g} hyperbolic tilings", "hyperband"};
    app.require_subcommand(1);
    Flags f;

    auto add_config = [&](CLI::App* s) {
        s->add_option("--config", f.config, "key=value file; flags override its entries");
    };
    auto add_genus = [&](CLI::App* s) {
        s->add_option("--g", f.genus, "genus g (>= 2)")->capture_default_str();
    };

    CLI::App* verify = app.add_subcommand("verify", "check group, phase, operator and spectral identities");
    add_genus(verify);
    verify->add_option("--B", f.B, "field: rational p/q, decimal, or real")->capture_default_str();
    verify->add_option("--tol-group", f.tol.group, "relation and trace tolerance")
        ->check(CLI::PositiveNumber);
    verify->add_option("--tol-pairing", f.tol.pairing, "edge pairing tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--tol-phase", f.tol.phase, "flux phase tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--tol-closure", f.tol.closure, "flux word closure tolerance")
        ->check(CLI::PositiveNumber);
    verify->add_option("--tol-constancy", f.tol.constancy, "phase z-independence tolerance")
        ->check(CLI::PositiveNumber);
    verify->add_option("--tol-covering", f.tol.covering, "covering and vertex-angle tolerance")
        ->check(CLI::PositiveNumber);
    verify->add_option("--tol-algebra", f.tol.algebra, "commutator tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--tol-hermitian", f.tol.hermitian, "Hermiticity tolerance")
        ->check(CLI::PositiveNumber);
    verify->add_option("--tol-sectors", f.tol.sectors, "sector union tolerance")->check(CLI::PositiveNumber);
    add_config(verify);

    CLI::App* tile = app.add_subcommand("tile", "render a patch of the tiling as SVG");
    add_genus(tile);
    tile->add_option("--depth", f.depth, "maximum word length")->capture_default_str();
    tile->add_option("--out", f.out, "output SVG path (default tiling.svg)");
    add_config(tile);

    CLI::App* spectrum = app.add_subcommand("spectrum", "print the eigenvalues of one Bloch Hamiltonian");
    spectrum->add_option("--B", f.B, "field as a rational p/2q, e.g. 1/6")->capture_default_str();
    spectrum->add_option("--p", f.p, "numerator p of B = p/2q");
    spectrum->add_option("--q", f.q, "denominator q of B = p/2q");
    spectrum->add_option("--model", f.model, "reduced, block-aniso or block-iso")->capture_default_str();
    spectrum->add_option("--m", f.m, "rotation sector 0..7 (reduced model)")->capture_default_str();
    spectrum->add_option("--k", f.k, "momentum k1,k2,k3,k4")->capture_default_str();
    add_config(spectrum);

    CLI::App* butterfly = app.add_subcommand("butterfly", "sweep rational fluxes and write phi,energy CSV");
    butterfly->add_option("--q-max", f.q_max, "largest flux denominator (>= 2)")->capture_default_str();
    butterfly->add_option("--k-samples", f.k_samples, "momenta per flux")->capture_default_str();
    butterfly->add_option("--seed", f.seed, "Halton offset for momenta")->capture_default_str();
    butterfly->add_option("--model", f.model, "reduced, block-aniso or block-iso")->capture_default_str();
    butterfly->add_option("--m", f.m, "rotation sector 0..7 (reduced model)")->capture_default_str();
    butterfly->add_option("--threads", f.threads, "worker threads, 0 for all cores")->capture_default_str();
    butterfly->add_option("--out", f.out, "output CSV path (default butterfly.csv)");
    add_config(butterfly);

    std::vector<const char*> argv{"hyperband"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!f.config.empty()) apply_config(*sub, f.config, {{"B", "p", "q"}});
        if (sub == verify) return cmd_verify(f, out);
        if (sub == tile) return cmd_tile(f, out);
        if (sub == spectrum) return cmd_spectrum(f, *sub, out);
        return cmd_butterfly(f, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return kExitFail;
    }
}

}  // namespace hyperband::cli
