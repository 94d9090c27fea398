#include "xylab/run.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "xylab/analysis.hpp"
#include "xylab/concurrence.hpp"
#include "xylab/model.hpp"
#include "xylab/thermal.hpp"

namespace xylab::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

// Evaluate f(0..count-1) on up to `threads` workers; results land wherever
// f writes them (indexed slots), so assembly order is fixed regardless of
// scheduling.
template <typename F>
void parallel_for(std::size_t count, int threads, F&& f) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(threads, count);
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

[[noreturn]] void usage_error(const std::string& flag, const std::string& message) {
    throw std::invalid_argument("usage error: " + flag + ": " + message);
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            usage_error(flag, "'" + item + "' is not a number");
        }
    }
    if (out.empty()) usage_error(flag, "empty list");
    return out;
}

GridSpec parse_grid(const std::string& text, const std::string& flag) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4) {
        usage_error(flag, "expected start:stop:count[:lin|log]");
    }
    GridSpec g;
    try {
        g.start = std::stod(parts[0]);
        g.stop = std::stod(parts[1]);
        g.count = std::stoi(parts[2]);
    } catch (const std::exception&) {
        usage_error(flag, "malformed range '" + text + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            g.log_spaced = true;
        } else if (parts[3] != "lin") {
            usage_error(flag, "spacing must be 'lin' or 'log'");
        }
    }
    if (g.count < 1) usage_error(flag, "count must be >= 1");
    if (!(g.start <= g.stop)) usage_error(flag, "range must be ordered");
    if (g.log_spaced && !(g.start > 0.0)) {
        usage_error(flag, "log spacing needs start > 0");
    }
    return g;
}

}  // namespace

std::vector<double> GridSpec::values() const {
    std::vector<double> out;
    out.reserve(count);
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        if (log_spaced) {
            out.push_back(start * std::pow(stop / start, f));
        } else {
            out.push_back(start + f * (stop - start));
        }
    }
    return out;
}

RunConfig parse_config(int argc, const char* const* argv) {
    RunConfig cfg;
    if (const char* env = std::getenv("XYLAB_THREADS")) {
        try {
            cfg.threads = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            throw std::invalid_argument("XYLAB_THREADS is not an integer");
        }
    }

    CLI::App app{"Thermal multipartite entanglement of anisotropic XY qubit chains"};
    app.name("xylab");

    std::string grid_eta, grid_gamma, grid_t, list_t, list_eta;

    app.add_option("command", cfg.command, "spectrum|thermal|concurrence|sweep|transitions|critical|table1|revival")
        ->required()
        ->check(CLI::IsMember({"spectrum", "thermal", "concurrence", "sweep", "transitions",
                               "critical", "table1", "revival"}));
    app.add_option("--n", cfg.n_qubits, "chain size (even, 2..12)");
    app.add_option("--gamma", cfg.gamma, "anisotropy in [-1, 1]");
    app.add_option("--eta", cfg.eta, "field ratio B_m/J");
    app.add_option("--J", cfg.coupling, "coupling constant (energy unit)");
    app.add_option("--T", cfg.temperature, "temperature (k = 1); 0 = exact ground state");
    app.add_option("--T-list", list_t, "comma-separated temperatures");
    app.add_option("--eta-list", list_eta, "comma-separated fields");
    app.add_option("--eta-grid", grid_eta, "eta range start:stop:count[:lin|log]");
    app.add_option("--gamma-grid", grid_gamma, "gamma range start:stop:count[:lin|log]");
    app.add_option("--T-grid", grid_t, "temperature range start:stop:count[:lin|log]");
    app.add_option("--kind", cfg.kind, "concurrence operator")
        ->check(CLI::IsMember({"multipartite", "full"}));
    app.add_option("--method", cfg.method, "estimator")
        ->check(CLI::IsMember({"exact", "approx", "upper"}));
    app.add_option("--trials", cfg.trials, "roof sampling trials")->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.output_path, "output file (default stdout)");
    app.add_option("--format", cfg.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", cfg.seed, "random seed for sampled estimators");
    app.add_option("--threads", cfg.threads, "worker threads (default $XYLAB_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    app.set_config("--config", "", "flat key = value configuration file");
    app.allow_config_extras(false);

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        if (e.get_exit_code() != 0) {
            os << "usage error: " << e.what();
            throw std::invalid_argument(os.str());
        }
        // --help and friends
        std::cout << app.help() << std::flush;
        throw std::invalid_argument("");
    }

    if (!list_t.empty()) cfg.t_list = parse_list(list_t, "--T-list");
    if (!list_eta.empty()) cfg.eta_list = parse_list(list_eta, "--eta-list");
    if (!grid_eta.empty()) cfg.eta_grid = parse_grid(grid_eta, "--eta-grid");
    if (!grid_gamma.empty()) cfg.gamma_grid = parse_grid(grid_gamma, "--gamma-grid");
    if (!grid_t.empty()) cfg.t_grid = parse_grid(grid_t, "--T-grid");

    if (cfg.n_qubits < 2 || cfg.n_qubits > 12 || cfg.n_qubits % 2 != 0) {
        throw std::invalid_argument("usage error: --n must be an even integer in [2, 12]");
    }
    if (cfg.temperature < 0.0) {
        throw std::invalid_argument("usage error: --T must be >= 0");
    }
    return cfg;
}

namespace {

void base_metadata(const RunConfig& cfg, io::Table& t) {
    t.metadata.emplace_back("xylab-version", kVersion);
    t.metadata.emplace_back("command", cfg.command);
    std::ostringstream params;
    params << "n=" << cfg.n_qubits << " gamma=" << io::format_double(cfg.gamma)
           << " eta=" << io::format_double(cfg.eta) << " J=" << io::format_double(cfg.coupling)
           << " T=" << io::format_double(cfg.temperature);
    t.metadata.emplace_back("params", params.str());
    t.metadata.emplace_back("seed", std::to_string(cfg.seed));
}

ModelParams params_of(const RunConfig& cfg) {
    return ModelParams{cfg.n_qubits, cfg.gamma, cfg.eta, cfg.coupling};
}

io::Table cmd_spectrum(const RunConfig& cfg) {
    const ModelParams p = params_of(cfg);
    const ComplexMatrix h = build_hamiltonian(p);
    const SpectralDecomposition spec = hermitian_eig(h);

    io::Table t;
    base_metadata(cfg, t);
    t.columns = {"index", "energy", "label", "family"};

    std::vector<std::string> labels(spec.eigenvalues.size());
    std::vector<std::string> families(spec.eigenvalues.size());

    if (cfg.n_qubits == 2 || cfg.n_qubits == 4) {
        auto closed = (cfg.n_qubits == 2) ? two_qubit_eigensystem(p) : four_qubit_eigensystem(p);
        std::stable_sort(closed.begin(), closed.end(),
                         [](const auto& a, const auto& b) { return a.energy < b.energy; });
        for (std::size_t k = 0; k < closed.size(); ++k) {
            labels[k] = closed[k].label;
            families[k] = to_string(closed[k].family);
        }
    } else if (cfg.n_qubits == 6 && std::abs(cfg.gamma) >= 1e-8) {
        const SixQubitGroundState g = six_qubit_ground_state(p);
        t.metadata.emplace_back("closed_ground_energy", io::format_double(g.energy));
        const bool is_ground =
            std::abs(g.energy - spec.eigenvalues.front()) <=
            1e-8 * std::max(1.0, std::abs(spec.eigenvalues.front()));
        t.metadata.emplace_back("closed_is_ground", is_ground ? "true" : "false");
        for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
            if (std::abs(spec.eigenvalues[k] - g.energy) <=
                1e-8 * std::max(1.0, std::abs(g.energy))) {
                labels[k] = "PhiG";
                families[k] = to_string(StateFamily::GhzLike);
                break;
            }
        }
    }

    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
        t.rows.push_back({static_cast<double>(k), spec.eigenvalues[k], labels[k], families[k]});
    }
    return t;
}

io::Table cmd_thermal(const RunConfig& cfg) {
    const ModelParams p = params_of(cfg);
    io::Table t;
    base_metadata(cfg, t);
    t.columns = {"index", "energy", "weight"};

    if (cfg.temperature == 0.0) {
        const ComplexMatrix chi = zero_temperature_state(p);
        const SpectralDecomposition spec = hermitian_eig(chi);
        const SpectralDecomposition hspec = hermitian_eig(build_hamiltonian(p));
        const double eg = hspec.eigenvalues.front();
        t.metadata.emplace_back("zero_temperature", "true");
        std::size_t idx = 0;
        for (std::size_t k = spec.eigenvalues.size(); k-- > 0;) {
            if (spec.eigenvalues[k] <= 1e-12) continue;
            t.rows.push_back({static_cast<double>(idx++), eg, spec.eigenvalues[k]});
        }
        return t;
    }

    const SpectralDecomposition spec = hermitian_eig(build_hamiltonian(p));
    const ThermalEnsemble ens = thermal_state(spec, cfg.temperature);
    t.metadata.emplace_back("partition_shifted", io::format_double(ens.partition));
    t.metadata.emplace_back("energy_shift", io::format_double(ens.energy_shift));
    t.metadata.emplace_back("log_partition", io::format_double(ens.log_partition()));
    if (p.n_qubits == 2 || p.n_qubits == 4 || p.n_qubits == 6) {
        t.metadata.emplace_back("ground_weight",
                                io::format_double(ground_weight(p, cfg.temperature)));
    }
    for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
        t.rows.push_back({static_cast<double>(k), spec.eigenvalues[k], ens.weights[k]});
    }
    return t;
}

ComplexMatrix state_for(const ModelParams& p, double temperature) {
    if (temperature == 0.0) return zero_temperature_state(p);
    const SpectralDecomposition spec = hermitian_eig(build_hamiltonian(p));
    return thermal_state(spec, temperature).chi;
}

io::Table cmd_concurrence(const RunConfig& cfg) {
    const ModelParams p = params_of(cfg);
    const ComplexMatrix chi = state_for(p, cfg.temperature);
    const AOperator a = (cfg.kind == "full") ? AOperator::full(cfg.n_qubits)
                                             : AOperator::multipartite(cfg.n_qubits);
    ConcurrenceEstimate est;
    if (cfg.method == "exact") {
        est = lower_bound(chi, a);
    } else if (cfg.method == "approx") {
        est = approx_lower(chi, a);
    } else {
        est = convex_roof_upper(chi, a, cfg.trials, cfg.seed);
    }
    io::Table t;
    base_metadata(cfg, t);
    t.columns = {"n", "gamma", "eta", "T", "kind", "method", "value"};
    t.rows.push_back({static_cast<double>(cfg.n_qubits), cfg.gamma, cfg.eta, cfg.temperature,
                      cfg.kind, to_string(est.method), est.value});
    return t;
}

io::Table cmd_sweep(const RunConfig& cfg) {
    // Sweep over exactly one grid; the other parameters stay fixed.
    int ngrids = 0;
    ngrids += cfg.eta_grid.has_value();
    ngrids += cfg.gamma_grid.has_value();
    ngrids += cfg.t_grid.has_value();
    if (ngrids != 1) {
        throw std::invalid_argument(
            "usage error: sweep needs exactly one of --eta-grid, --gamma-grid, --T-grid");
    }
    std::vector<double> grid;
    enum class Axis { Eta, Gamma, Temp } axis;
    if (cfg.eta_grid) {
        grid = cfg.eta_grid->values();
        axis = Axis::Eta;
    } else if (cfg.gamma_grid) {
        grid = cfg.gamma_grid->values();
        axis = Axis::Gamma;
    } else {
        grid = cfg.t_grid->values();
        axis = Axis::Temp;
    }

    io::Table t;
    base_metadata(cfg, t);
    const int n = cfg.n_qubits;
    if (n == 2) {
        t.columns = {"gamma", "eta", "T", "c_wootters"};
    } else {
        t.columns = {"gamma", "eta", "T", "c" + std::to_string(n) + "_multi",
                     "c" + std::to_string(n) + "_full"};
    }

    t.rows.resize(grid.size());
    const AOperator a_multi = (n >= 4) ? AOperator::multipartite(n) : AOperator::multipartite(2);
    const AOperator a_full = AOperator::full(n);

    parallel_for(grid.size(), cfg.threads, [&](std::size_t i) {
        ModelParams p = params_of(cfg);
        double temperature = cfg.temperature;
        switch (axis) {
            case Axis::Eta: p.eta = grid[i]; break;
            case Axis::Gamma: p.gamma = grid[i]; break;
            case Axis::Temp: temperature = grid[i]; break;
        }
        const ComplexMatrix chi = state_for(p, temperature);
        if (n == 2) {
            t.rows[i] = {p.gamma, p.eta, temperature, wootters(chi).value};
        } else {
            const double multi = lower_bound(chi, a_multi).value;
            const double full = lower_bound(chi, a_full).value;
            t.rows[i] = {p.gamma, p.eta, temperature, multi, full};
        }
    });
    return t;
}

io::Table cmd_transitions(const RunConfig& cfg) {
    std::vector<double> gammas =
        cfg.gamma_grid ? cfg.gamma_grid->values() : std::vector<double>{cfg.gamma};

    io::Table t;
    base_metadata(cfg, t);
    t.columns = {"gamma", "eta1", "eta2"};
    t.rows.resize(gammas.size());
    parallel_for(gammas.size(), cfg.threads, [&](std::size_t i) {
        const TransitionFields f = transition_fields(gammas[i]);
        t.rows[i] = {gammas[i], f.eta1, f.eta2};
    });
    return t;
}

io::Table cmd_critical(const RunConfig& cfg) {
    // Default eta grid: log-spaced samples of the entangled region.
    const GridSpec grid = cfg.eta_grid ? *cfg.eta_grid : GridSpec{0.05, 100.0, 40, true};
    const std::vector<double> etas = grid.values();
    const std::vector<double> gammas =
        cfg.gamma_grid ? cfg.gamma_grid->values() : std::vector<double>{cfg.gamma};

    io::Table t;
    base_metadata(cfg, t);
    t.columns = {"gamma", "eta", "T_c"};
    std::vector<CriticalCurve> curves(gammas.size());
    for (std::size_t g = 0; g < gammas.size(); ++g) {
        curves[g].gamma = gammas[g];
        curves[g].points.resize(etas.size());
    }
    parallel_for(gammas.size() * etas.size(), cfg.threads, [&](std::size_t i) {
        const std::size_t g = i / etas.size();
        const std::size_t e = i % etas.size();
        curves[g].points[e] = {etas[e],
                               critical_temperature(gammas[g], etas[e], cfg.coupling)};
    });
    for (const auto& curve : curves) {
        for (const auto& pt : curve.points) {
            t.rows.push_back({curve.gamma, pt.eta,
                              pt.t_critical ? io::Value{*pt.t_critical}
                                            : io::Value{std::nan("")}});
        }
    }
    return t;
}

io::Table cmd_table1(const RunConfig& cfg) {
    const std::vector<double> ts =
        cfg.t_list.empty() ? std::vector<double>{1.0, 5.0, 10.0, 50.0, 100.0} : cfg.t_list;
    const std::vector<double> etas =
        cfg.eta_list.empty() ? std::vector<double>{0.0, 100.0, 1000.0} : cfg.eta_list;

    io::Table t;
    base_metadata(cfg, t);
    t.columns = {"T", "eta", "c4_chi", "c4_phi15"};
    t.rows.resize(ts.size() * etas.size());
    parallel_for(t.rows.size(), cfg.threads, [&](std::size_t i) {
        const double temp = ts[i / etas.size()];
        const double eta = etas[i % etas.size()];
        const double chi_val = thermal_c4(cfg.gamma, eta, cfg.coupling, temp);
        const ModelParams p{4, cfg.gamma, eta, cfg.coupling};
        double phi15 = 0.0;
        for (const auto& s : four_qubit_eigensystem(p)) {
            if (s.label == "Phi15") phi15 = pure_spinflip(s.state).value;
        }
        t.rows[i] = {temp, eta, chi_val, phi15};
    });
    return t;
}

io::Table cmd_revival(const RunConfig& cfg) {
    const std::vector<double> ts =
        cfg.t_list.empty() ? std::vector<double>{cfg.temperature > 0.0 ? cfg.temperature : 1.0}
                           : cfg.t_list;

    io::Table t;
    base_metadata(cfg, t);
    t.columns = {"gamma", "T", "eta_star", "c4_at_star", "ground_weight"};
    t.rows.resize(ts.size());
    parallel_for(ts.size(), cfg.threads, [&](std::size_t i) {
        const auto star = revival_field(cfg.gamma, ts[i], cfg.coupling);
        if (star) {
            const double c4 = thermal_c4(cfg.gamma, *star, cfg.coupling, ts[i]);
            const ModelParams p{4, cfg.gamma, *star, cfg.coupling};
            t.rows[i] = {cfg.gamma, ts[i], *star, c4, ground_weight(p, ts[i])};
        } else {
            t.rows[i] = {cfg.gamma, ts[i], std::nan(""), std::nan(""), std::nan("")};
        }
    });
    return t;
}

}  // namespace

io::Table compute(const RunConfig& cfg) {
    if (cfg.command == "spectrum") return cmd_spectrum(cfg);
    if (cfg.command == "thermal") return cmd_thermal(cfg);
    if (cfg.command == "concurrence") return cmd_concurrence(cfg);
    if (cfg.command == "sweep") return cmd_sweep(cfg);
    if (cfg.command == "transitions") return cmd_transitions(cfg);
    if (cfg.command == "critical") return cmd_critical(cfg);
    if (cfg.command == "table1") return cmd_table1(cfg);
    if (cfg.command == "revival") return cmd_revival(cfg);
    throw std::invalid_argument("usage error: unknown command '" + cfg.command + "'");
}

int run(const RunConfig& cfg) {
    const io::Table table = compute(cfg);
    const std::string payload = (cfg.format == "json") ? io::to_json(table) : io::to_csv(table);
    if (cfg.output_path.empty()) {
        std::cout << payload;
        if (!std::cout) {
            std::cerr << "xylab: failed to write to stdout\n";
            return kExitComputation;
        }
        return kExitOk;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
        std::cerr << "xylab: cannot open '" << cfg.output_path << "' for writing\n";
        return kExitComputation;
    }
    out << payload;
    out.close();
    if (!out) {
        std::cerr << "xylab: failed writing '" << cfg.output_path << "'\n";
        return kExitComputation;
    }
    return kExitOk;
}

int main_entry(int argc, const char* const* argv) {
    RunConfig cfg;
    try {
        cfg = parse_config(argc, argv);
    } catch (const std::invalid_argument& e) {
        if (e.what()[0] == '\0') return kExitOk;  // --help path
        std::cerr << "xylab: " << e.what() << "\n";
        return kExitUsage;
    }
    try {
        return run(cfg);
    } catch (const std::exception& e) {
        std::cerr << "xylab: " << e.what() << "\n";
        return kExitComputation;
    }
}

}  // namespace xylab::cli
