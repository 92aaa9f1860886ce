#include "recirc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace recirc {

PhysicalParams RunConfig::physical_params() const {
    PhysicalParams p;
    p.nu = physics.nu;
    p.nu_tur = physics.nu_tur;
    p.K = physics.K;
    const double rho_cp = physics.rho * physics.c_p;
    p.b1N = physics.h_N / rho_cp;
    p.b1S = physics.h_S / rho_cp;
    p.b2S = physics.b2S;
    p.alpha0 = physics.alpha0;
    p.theta0 = physics.theta0;
    p.theta_S = physics.theta_S;
    p.theta_N = physics.theta_N;
    p.pump_bound = physics.M_bound;
    return p;
}

PumpLayout RunConfig::effective_layout() const {
    if (!layout.pairs.empty()) return layout;
    if (!layout_given && domain.width >= 4.0 && domain.height >= 8.0)
        return PumpLayout::symmetric4(domain.width, domain.height);
    PumpLayout l = PumpLayout::none();
    l.surface_side = layout.surface_side;
    return l;
}

double RunConfig::radiation_temperature(double t) const {
    if (radiation.mode == "tabulated") {
        const auto& ts = radiation.table_t;
        const auto& vs = radiation.table_Tr;
        if (ts.empty()) throw config_error("radiation: tabulated mode without data");
        if (t <= ts.front()) return vs.front();
        if (t >= ts.back()) return vs.back();
        const auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const std::size_t i = it - ts.begin();
        const double a = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
        return (1.0 - a) * vs[i - 1] + a * vs[i];
    }
    const double s = std::sin(2.0 * M_PI * t / radiation.period);
    return radiation.base + radiation.amplitude * std::pow(std::max(0.0, s), 1.5);
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return d;
    } catch (const std::exception&) {
        throw config_error("line " + std::to_string(line) + ": bad number for '" + key +
                           "': " + v);
    }
}

int parse_int(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return i;
    } catch (const std::exception&) {
        throw config_error("line " + std::to_string(line) + ": bad integer for '" + key +
                           "': " + v);
    }
}

std::vector<double> parse_numbers(const std::string& v, const std::string& key, int line) {
    std::vector<double> out;
    std::istringstream ss(v);
    std::string tok;
    while (ss >> tok) out.push_back(parse_double(tok, key, line));
    return out;
}

Span parse_span(const std::string& v, const std::string& key, int line) {
    std::istringstream ss(v);
    std::string side;
    double lo, hi;
    if (!(ss >> side >> lo >> hi))
        throw config_error("line " + std::to_string(line) + ": expected 'side lo hi' for '" +
                           key + "'");
    try {
        return {side_from_name(side), lo, hi};
    } catch (const param_error& e) {
        throw config_error("line " + std::to_string(line) + ": " + e.what());
    }
}

std::string fmt(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

void load_radiation_table(RunConfig& cfg, const std::filesystem::path& base_dir) {
    std::filesystem::path file(cfg.radiation.file);
    if (file.is_relative()) file = base_dir / file;
    std::ifstream in(file);
    if (!in) throw config_error("radiation: cannot open table file " + file.string());
    double t, Tr;
    while (in >> t >> Tr) {
        cfg.radiation.table_t.push_back(t);
        cfg.radiation.table_Tr.push_back(Tr);
    }
    if (cfg.radiation.table_t.size() < 2)
        throw config_error("radiation: table file needs at least two samples");
    for (std::size_t i = 1; i < cfg.radiation.table_t.size(); ++i)
        if (cfg.radiation.table_t[i] <= cfg.radiation.table_t[i - 1])
            throw config_error("radiation: table times must be increasing");
}

void validate(const RunConfig& cfg) {
    auto positive = [](double v, const std::string& key) {
        if (!(v > 0.0) || !std::isfinite(v)) throw config_error("config: '" + key + "' must be positive");
    };
    positive(cfg.domain.width, "domain.width");
    positive(cfg.domain.height, "domain.height");
    positive(cfg.domain.h, "domain.h");
    positive(cfg.time.dt, "time.dt");
    if (cfg.time.steps < 0) throw config_error("config: 'time.steps' must be >= 0");
    positive(cfg.physics.nu, "physics.nu");
    positive(cfg.physics.K, "physics.K");
    positive(cfg.physics.rho, "physics.rho");
    positive(cfg.physics.c_p, "physics.c_p");
    for (auto [v, key] : {std::pair<double, const char*>{cfg.physics.nu_tur, "physics.nu_tur"},
                          {cfg.physics.h_N, "physics.h_N"},
                          {cfg.physics.h_S, "physics.h_S"},
                          {cfg.physics.theta0, "physics.theta0"},
                          {cfg.physics.theta_S, "physics.theta_S"},
                          {cfg.physics.theta_N, "physics.theta_N"},
                          {cfg.physics.alpha0, "physics.alpha0"},
                          {cfg.physics.b2S, "physics.b2S"},
                          {cfg.physics.M_bound, "physics.M_bound"}})
        if (!std::isfinite(v) || v < 0.0)
            throw config_error(std::string("config: '") + key + "' must be finite and >= 0");

    if (!cfg.schedule.rows.empty()) {
        const int n_pumps = cfg.effective_layout().pump_count();
        if (static_cast<int>(cfg.schedule.rows.size()) != n_pumps)
            throw config_error("schedule: expected " + std::to_string(n_pumps) +
                               " rows to match the layout, got " +
                               std::to_string(cfg.schedule.rows.size()));
        for (const auto& row : cfg.schedule.rows)
            if (static_cast<int>(row.size()) != cfg.time.steps)
                throw config_error("schedule: each row needs time.steps = " +
                                   std::to_string(cfg.time.steps) + " rates");
    } else {
        bool known = false;
        for (const auto& n : {"NNNN", "TTTT", "PPPP", "TPTP", "PTPT"})
            if (cfg.schedule.preset == n) known = true;
        if (!known) throw config_error("schedule: unknown preset '" + cfg.schedule.preset + "'");
    }
    if (cfg.radiation.mode != "synthetic" && cfg.radiation.mode != "tabulated")
        throw config_error("radiation: mode must be synthetic or tabulated");
    if (cfg.output.snapshot_every < 0)
        throw config_error("config: 'output.snapshot_every' must be >= 0");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::map<int, PumpPair> pairs;  // 1-based index from the key
    std::map<int, std::vector<double>> rows;

    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const auto hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line) + ": expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));

        if (key == "domain.width") cfg.domain.width = parse_double(value, key, line);
        else if (key == "domain.height") cfg.domain.height = parse_double(value, key, line);
        else if (key == "domain.h") cfg.domain.h = parse_double(value, key, line);
        else if (key == "time.dt") cfg.time.dt = parse_double(value, key, line);
        else if (key == "time.steps") cfg.time.steps = parse_int(value, key, line);
        else if (key == "physics.nu") cfg.physics.nu = parse_double(value, key, line);
        else if (key == "physics.nu_tur") cfg.physics.nu_tur = parse_double(value, key, line);
        else if (key == "physics.K") cfg.physics.K = parse_double(value, key, line);
        else if (key == "physics.h_N") cfg.physics.h_N = parse_double(value, key, line);
        else if (key == "physics.h_S") cfg.physics.h_S = parse_double(value, key, line);
        else if (key == "physics.rho") cfg.physics.rho = parse_double(value, key, line);
        else if (key == "physics.c_p") cfg.physics.c_p = parse_double(value, key, line);
        else if (key == "physics.theta0") cfg.physics.theta0 = parse_double(value, key, line);
        else if (key == "physics.theta_S") cfg.physics.theta_S = parse_double(value, key, line);
        else if (key == "physics.theta_N") cfg.physics.theta_N = parse_double(value, key, line);
        else if (key == "physics.alpha0") cfg.physics.alpha0 = parse_double(value, key, line);
        else if (key == "physics.b2S") cfg.physics.b2S = parse_double(value, key, line);
        else if (key == "physics.M_bound") cfg.physics.M_bound = parse_double(value, key, line);
        else if (key == "layout.surface_side") {
            try {
                cfg.layout.surface_side = side_from_name(value);
            } catch (const param_error& e) {
                throw config_error("line " + std::to_string(line) + ": " + e.what());
            }
        } else if (key.starts_with("layout.pair.")) {
            const auto rest = key.substr(12);
            const auto dot = rest.find('.');
            if (dot == std::string::npos)
                throw config_error("line " + std::to_string(line) + ": bad layout key '" + key +
                                   "'");
            const int idx = parse_int(rest.substr(0, dot), key, line);
            const std::string part = rest.substr(dot + 1);
            cfg.layout_given = true;
            if (part == "collector") pairs[idx].collector = parse_span(value, key, line);
            else if (part == "injector") pairs[idx].injector = parse_span(value, key, line);
            else
                throw config_error("line " + std::to_string(line) + ": bad layout key '" + key +
                                   "'");
        } else if (key == "schedule.preset") cfg.schedule.preset = value;
        else if (key.starts_with("schedule.row.")) {
            const int idx = parse_int(key.substr(13), key, line);
            rows[idx] = parse_numbers(value, key, line);
        } else if (key == "radiation.mode") cfg.radiation.mode = value;
        else if (key == "radiation.base") cfg.radiation.base = parse_double(value, key, line);
        else if (key == "radiation.amplitude") cfg.radiation.amplitude = parse_double(value, key, line);
        else if (key == "radiation.period") cfg.radiation.period = parse_double(value, key, line);
        else if (key == "radiation.file") cfg.radiation.file = value;
        else if (key == "solver.picard_tol") cfg.solver.picard_tol = parse_double(value, key, line);
        else if (key == "solver.picard_max") cfg.solver.picard_max = parse_int(value, key, line);
        else if (key == "solver.constraint_tol") cfg.solver.constraint_tol = parse_double(value, key, line);
        else if (key == "solver.hydro_picard_tol") cfg.solver.hydro_picard_tol = parse_double(value, key, line);
        else if (key == "solver.hydro_picard_max") cfg.solver.hydro_picard_max = parse_int(value, key, line);
        else if (key == "solver.cg_tol") cfg.solver.cg_tol = parse_double(value, key, line);
        else if (key == "solver.thermal_cg_tol") cfg.solver.thermal_cg_tol = parse_double(value, key, line);
        else if (key == "solver.uzawa_tol") cfg.solver.uzawa_tol = parse_double(value, key, line);
        else if (key == "solver.uzawa_max") cfg.solver.uzawa_max = parse_int(value, key, line);
        else if (key == "solver.uzawa_step") cfg.solver.uzawa_step = parse_double(value, key, line);
        else if (key == "output.dir") cfg.output.dir = value;
        else if (key == "output.snapshot_every") cfg.output.snapshot_every = parse_int(value, key, line);
        else
            throw config_error("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }

    int expect = 1;
    for (const auto& [idx, pr] : pairs) {
        if (idx != expect)
            throw config_error("layout: pair indices must be consecutive from 1, got " +
                               std::to_string(idx));
        ++expect;
        cfg.layout.pairs.push_back(pr);
    }
    expect = 1;
    for (const auto& [idx, row] : rows) {
        if (idx != expect)
            throw config_error("schedule: row indices must be consecutive from 1, got " +
                               std::to_string(idx));
        ++expect;
        cfg.schedule.rows.push_back(row);
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    RunConfig cfg = parse_config(ss.str());
    if (cfg.radiation.mode == "tabulated")
        load_radiation_table(cfg, std::filesystem::path(path).parent_path());
    validate(cfg);
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream o;
    o << "domain.width = " << fmt(cfg.domain.width) << "\n";
    o << "domain.height = " << fmt(cfg.domain.height) << "\n";
    o << "domain.h = " << fmt(cfg.domain.h) << "\n";
    o << "time.dt = " << fmt(cfg.time.dt) << "\n";
    o << "time.steps = " << cfg.time.steps << "\n";
    o << "physics.nu = " << fmt(cfg.physics.nu) << "\n";
    o << "physics.nu_tur = " << fmt(cfg.physics.nu_tur) << "\n";
    o << "physics.K = " << fmt(cfg.physics.K) << "\n";
    o << "physics.h_N = " << fmt(cfg.physics.h_N) << "\n";
    o << "physics.h_S = " << fmt(cfg.physics.h_S) << "\n";
    o << "physics.rho = " << fmt(cfg.physics.rho) << "\n";
    o << "physics.c_p = " << fmt(cfg.physics.c_p) << "\n";
    o << "physics.theta0 = " << fmt(cfg.physics.theta0) << "\n";
    o << "physics.theta_S = " << fmt(cfg.physics.theta_S) << "\n";
    o << "physics.theta_N = " << fmt(cfg.physics.theta_N) << "\n";
    o << "physics.alpha0 = " << fmt(cfg.physics.alpha0) << "\n";
    o << "physics.b2S = " << fmt(cfg.physics.b2S) << "\n";
    o << "physics.M_bound = " << fmt(cfg.physics.M_bound) << "\n";
    o << "layout.surface_side = " << side_name(cfg.layout.surface_side) << "\n";
    if (cfg.layout_given) {
        for (std::size_t k = 0; k < cfg.layout.pairs.size(); ++k) {
            const auto& pr = cfg.layout.pairs[k];
            o << "layout.pair." << k + 1 << ".collector = " << side_name(pr.collector.side) << " "
              << fmt(pr.collector.lo) << " " << fmt(pr.collector.hi) << "\n";
            o << "layout.pair." << k + 1 << ".injector = " << side_name(pr.injector.side) << " "
              << fmt(pr.injector.lo) << " " << fmt(pr.injector.hi) << "\n";
        }
    }
    if (!cfg.schedule.rows.empty()) {
        for (std::size_t k = 0; k < cfg.schedule.rows.size(); ++k) {
            o << "schedule.row." << k + 1 << " =";
            for (double g : cfg.schedule.rows[k]) o << " " << fmt(g);
            o << "\n";
        }
    } else {
        o << "schedule.preset = " << cfg.schedule.preset << "\n";
    }
    o << "radiation.mode = " << cfg.radiation.mode << "\n";
    o << "radiation.base = " << fmt(cfg.radiation.base) << "\n";
    o << "radiation.amplitude = " << fmt(cfg.radiation.amplitude) << "\n";
    o << "radiation.period = " << fmt(cfg.radiation.period) << "\n";
    if (!cfg.radiation.file.empty()) o << "radiation.file = " << cfg.radiation.file << "\n";
    o << "solver.picard_tol = " << fmt(cfg.solver.picard_tol) << "\n";
    o << "solver.picard_max = " << cfg.solver.picard_max << "\n";
    o << "solver.constraint_tol = " << fmt(cfg.solver.constraint_tol) << "\n";
    o << "solver.hydro_picard_tol = " << fmt(cfg.solver.hydro_picard_tol) << "\n";
    o << "solver.hydro_picard_max = " << cfg.solver.hydro_picard_max << "\n";
    o << "solver.cg_tol = " << fmt(cfg.solver.cg_tol) << "\n";
    o << "solver.thermal_cg_tol = " << fmt(cfg.solver.thermal_cg_tol) << "\n";
    o << "solver.uzawa_tol = " << fmt(cfg.solver.uzawa_tol) << "\n";
    o << "solver.uzawa_max = " << cfg.solver.uzawa_max << "\n";
    o << "solver.uzawa_step = " << fmt(cfg.solver.uzawa_step) << "\n";
    if (!cfg.output.dir.empty()) o << "output.dir = " << cfg.output.dir << "\n";
    o << "output.snapshot_every = " << cfg.output.snapshot_every << "\n";
    return o.str();
}

}  // namespace recirc
