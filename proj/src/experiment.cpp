#include "fchain/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "fchain/chain.hpp"
#include "fchain/continuum.hpp"
#include "fchain/csv.hpp"
#include "fchain/eigensolver.hpp"
#include "fchain/manybody.hpp"
#include "fchain/sdrg.hpp"

namespace fchain {

namespace {

using nlohmann::json;

HoppingProfile parse_profile(const json& p, const std::filesystem::path& base) {
    const std::string kind = p.at("kind").get<std::string>();
    try {
        if (kind == "minkowski") return HoppingProfile::minkowski();
        if (kind == "rindler") return HoppingProfile::rindler(p.value("c", 0.0));
        if (kind == "sine")
            return HoppingProfile::sine(p.value("J0", 1.0), p.value("J1", 0.0));
        if (kind == "rainbow") return HoppingProfile::rainbow(p.at("h").get<double>());
        if (kind == "custom") {
            std::filesystem::path table = p.at("table").get<std::string>();
            if (table.is_relative()) table = base / table;
            std::ifstream in(table);
            if (!in) throw ConfigError("cannot open custom table " + table.string());
            std::vector<std::pair<double, double>> pts;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                for (char& ch : line)
                    if (ch == ',') ch = ' ';
                double x, j;
                if (std::sscanf(line.c_str(), "%lf %lf", &x, &j) == 2) pts.emplace_back(x, j);
            }
            return HoppingProfile::custom(std::move(pts));
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown profile kind: " + kind);
}

// Per-job fan-out; failures are re-thrown on the caller's thread.
void run_jobs(const std::vector<std::function<void()>>& tasks, int jobs) {
    if (jobs <= 1 || tasks.size() <= 1) {
        for (const auto& t : tasks) t();
        return;
    }
    std::mutex mtx;
    std::size_t next = 0;
    std::exception_ptr err;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard lk(mtx);
                if (next >= tasks.size() || err) return;
                i = next++;
            }
            try {
                tasks[i]();
            } catch (...) {
                std::lock_guard lk(mtx);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

std::string nu_tag(double nu) {
    return "nu" + format_number(nu);
}

struct GroundState {
    ChainSpec chain;
    Spectrum spectrum;
    std::vector<double> n;
    double fermi_energy = 0.0;
};

GroundState solve(std::vector<double> hoppings, int m,
                  std::optional<std::vector<double>> potentials = std::nullopt) {
    GroundState g;
    g.chain = build_chain(std::move(hoppings), std::move(potentials));
    g.spectrum = diagonalize(g.chain);
    g.n = density(OccupiedState(g.spectrum, m));
    g.fermi_energy = g.spectrum.energies[m - 1];
    return g;
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        const auto base = path.parent_path();
        if (j.contains("profiles"))
            for (const auto& p : j["profiles"]) cfg.profiles.push_back(parse_profile(p, base));
        else if (j.contains("profile"))
            cfg.profiles.push_back(parse_profile(j["profile"], base));
        cfg.n_sites = j.value("N", 400);
        if (cfg.n_sites < 2 || cfg.n_sites % 2 != 0)
            throw ConfigError("N must be even and >= 2");
        if (j.contains("fillings"))
            cfg.fillings = j["fillings"].get<std::vector<double>>();
        if (j.contains("h_list")) cfg.h_list = j["h_list"].get<std::vector<double>>();
        if (j.contains("modes")) cfg.mode_indices = j["modes"].get<std::vector<int>>();
        if (j.contains("mu0") && j["mu0"].is_number()) cfg.mu0 = j["mu0"].get<double>();
        cfg.dump_spectrum = j.value("dump_spectrum", false);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    for (double nu : cfg.fillings) particles_for(cfg, nu);
    for (int m : cfg.mode_indices)
        if (m < 1 || m > cfg.n_sites) throw ConfigError("mode index out of range");
    return cfg;
}

int particles_for(const ExperimentConfig& cfg, double filling) {
    if (!(filling > 0.0 && filling < 1.0))
        throw ConfigError("filling fraction must lie in (0,1)");
    const double mN = filling * cfg.n_sites;
    const int m = int(std::lround(mN));
    if (std::abs(mN - m) > 1e-9) throw ConfigError("nu*N must be an integer");
    return m;
}

void cmd_density(const ExperimentConfig& cfg) {
    if (cfg.profiles.empty()) throw ConfigError("density: no profiles given");
    if (cfg.fillings.empty()) throw ConfigError("density: empty fillings list");
    std::vector<std::function<void()>> tasks;
    for (const auto& prof : cfg.profiles) {
        for (double nu : cfg.fillings) {
            const int m = particles_for(cfg, nu);
            tasks.push_back([&cfg, &prof, nu, m] {
                const int n = cfg.n_sites;
                auto hop = prof.sample(n);
                GroundState g = solve(hop, m);
                auto bonds = run_sdrg(hop);
                auto n_sdrg = sdrg_density(bonds, m, n);
                auto sj = site_hoppings(hop);
                auto n_semi = semiclassical_density(sj, g.fermi_energy, m);
                auto smooth = sliding_mean(g.n);
                auto fit = fit_density(smooth, sj);
                const auto dir = cfg.outdir / "density";
                CsvWriter csv(dir / (prof.label() + "_" + nu_tag(nu) + ".csv"),
                              "site,x,n_exact,n_sdrg,n_semiclassical,n_fitted "
                              "(densities dimensionless)");
                for (int i = 0; i < n; ++i) {
                    const double r = fit.offset - 1.0 / sj[i];
                    const double nfit = r > 0.0 ? fit.amplitude * std::sqrt(r) : 0.0;
                    csv.row({double(i + 1), double(i + 1) / n, g.n[i], n_sdrg[i],
                             n_semi[i], nfit});
                }
                if (cfg.dump_spectrum) {
                    CsvWriter sp(dir / (prof.label() + "_" + nu_tag(nu) + "_spectrum.csv"),
                                 "k,eps_k (energy, units of J0)");
                    for (int k = 0; k < n; ++k)
                        sp.row({double(k + 1), g.spectrum.energies[k]});
                }
            });
        }
    }
    run_jobs(tasks, cfg.jobs);
}

void cmd_modes(const ExperimentConfig& cfg) {
    if (cfg.profiles.empty()) throw ConfigError("modes: no profiles given");
    if (cfg.mode_indices.empty()) throw ConfigError("modes: empty mode list");
    std::vector<std::function<void()>> tasks;
    for (const auto& prof : cfg.profiles) {
        tasks.push_back([&cfg, &prof] {
            const int n = cfg.n_sites;
            auto hop = prof.sample(n);
            GroundState g = solve(hop, n / 2);
            std::vector<double> grid(n);
            for (int i = 0; i < n; ++i) grid[i] = double(i + 1) / n;
            for (int m : cfg.mode_indices) {
                const double kfa = std::numbers::pi * double(m) / n;
                auto env = wkb_envelope(prof, g.spectrum.energies[m - 1], kfa, grid);
                CsvWriter csv(cfg.outdir / "modes" /
                                  (prof.label() + "_mode" + std::to_string(m) + ".csv"),
                              "site,x,abs_psi,envelope,masked (amplitudes dimensionless)");
                for (int i = 0; i < n; ++i)
                    csv.row({double(i + 1), grid[i], std::abs(g.spectrum.mode(m - 1, i)),
                             env.value[i], env.masked[i] ? 1.0 : 0.0});
            }
        });
    }
    run_jobs(tasks, cfg.jobs);
}

void cmd_strongsweep(const ExperimentConfig& cfg) {
    if (cfg.h_list.empty()) throw ConfigError("strongsweep: empty h list");
    if (cfg.fillings.empty()) throw ConfigError("strongsweep: empty fillings list");
    std::vector<std::function<void()>> tasks;
    for (double h : cfg.h_list) {
        if (h > 30.0)
            std::fprintf(stderr,
                         "warning: rainbow h=%g exceeds 30; double-precision accuracy "
                         "degrades for exponentially graded couplings\n", h);
        for (double nu : cfg.fillings) {
            const int m = particles_for(cfg, nu);
            tasks.push_back([&cfg, h, nu, m] {
                const int n = cfg.n_sites;
                auto prof = HoppingProfile::rainbow(h);
                auto hop = prof.sample(n);
                GroundState g = solve(hop, m);
                auto bonds = run_sdrg(hop);
                auto n_sdrg = sdrg_density(bonds, m, n);
                const auto dir = cfg.outdir / "strongsweep";
                CsvWriter csv(dir / (prof.label() + "_" + nu_tag(nu) + ".csv"),
                              "site,x,n_exact,n_sdrg (densities dimensionless)");
                for (int i = 0; i < n; ++i)
                    csv.row({double(i + 1), double(i + 1) / n, g.n[i], n_sdrg[i]});
                CsvWriter bc(dir / (prof.label() + "_bonds.csv"),
                             "rank,left,right,strength,sign");
                for (const auto& b : bonds)
                    bc.row({double(b.rank), double(b.left), double(b.right), b.strength,
                            double(b.sign)});
            });
        }
    }
    run_jobs(tasks, cfg.jobs);
}

void cmd_compensate(const ExperimentConfig& cfg) {
    if (cfg.profiles.empty()) throw ConfigError("compensate: no profiles given");
    if (cfg.fillings.empty()) throw ConfigError("compensate: empty fillings list");
    std::vector<std::function<void()>> tasks;
    for (const auto& prof : cfg.profiles) {
        for (double nu : cfg.fillings) {
            const int m = particles_for(cfg, nu);
            tasks.push_back([&cfg, &prof, nu, m] {
                const int n = cfg.n_sites;
                auto hop = prof.sample(n);
                GroundState comp = solve(hop, m, compensating_potential(hop, nu));
                GroundState homog = solve(std::vector<double>(n - 1, 1.0), m);
                CsvWriter csv(cfg.outdir / "compensate" /
                                  (prof.label() + "_" + nu_tag(nu) + ".csv"),
                              "site,x,n_compensated,n_homogeneous (densities dimensionless)");
                for (int i = 0; i < n; ++i)
                    csv.row({double(i + 1), double(i + 1) / n, comp.n[i], homog.n[i]});
            });
        }
    }
    run_jobs(tasks, cfg.jobs);
}

void cmd_mimic(const ExperimentConfig& cfg) {
    if (cfg.profiles.empty()) throw ConfigError("mimic: no profiles given");
    if (cfg.fillings.empty()) throw ConfigError("mimic: empty fillings list");
    std::vector<std::function<void()>> tasks;
    for (const auto& prof : cfg.profiles) {
        for (double nu : cfg.fillings) {
            const int m = particles_for(cfg, nu);
            tasks.push_back([&cfg, &prof, nu, m] {
                const int n = cfg.n_sites;
                auto hop = prof.sample(n);
                GroundState orig = solve(hop, m);
                ChainSpec mc = mimicking_chain(hop, nu, cfg.mu0);
                Spectrum msp = diagonalize(mc);
                auto n_mim = density(OccupiedState(msp, m));
                CsvWriter csv(cfg.outdir / "mimic" /
                                  (prof.label() + "_" + nu_tag(nu) + ".csv"),
                              "site,x,n_original,n_mimicking,mu_mimicking "
                              "(densities dimensionless, mu in units of J0)");
                for (int i = 0; i < n; ++i)
                    csv.row({double(i + 1), double(i + 1) / n, orig.n[i], n_mim[i],
                             mc.potentials[i]});
            });
        }
    }
    run_jobs(tasks, cfg.jobs);
}

void cmd_entropy(const ExperimentConfig& cfg) {
    if (cfg.profiles.empty()) throw ConfigError("entropy: no profiles given");
    if (cfg.fillings.empty()) throw ConfigError("entropy: empty fillings list");
    std::vector<std::function<void()>> tasks;
    for (const auto& prof : cfg.profiles) {
        for (double nu : cfg.fillings) {
            const int m = particles_for(cfg, nu);
            tasks.push_back([&cfg, &prof, nu, m] {
                const int n = cfg.n_sites;
                auto hop = prof.sample(n);
                GroundState orig = solve(hop, m);
                auto s_orig = entropy_profile(OccupiedState(orig.spectrum, m), cfg.jobs);
                ChainSpec mc = mimicking_chain(hop, nu, cfg.mu0);
                Spectrum msp = diagonalize(mc);
                auto s_mim = entropy_profile(OccupiedState(msp, m), cfg.jobs);
                CsvWriter csv(cfg.outdir / "entropy" /
                                  (prof.label() + "_" + nu_tag(nu) + ".csv"),
                              "l,S_original,S_mimicking (entropies in nats)");
                for (int l = 1; l < n; ++l)
                    csv.row({double(l), s_orig[l - 1], s_mim[l - 1]});
            });
        }
    }
    run_jobs(tasks, cfg.jobs);
}

}  // namespace fchain
