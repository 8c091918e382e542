#include "ftqm/cli/config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace ftqm::cli {

using nlohmann::json;

namespace {

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

std::string index_path(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

/// Tracks which keys of an object were consumed so leftovers can be
/// reported as unknown.
class ObjectReader {
public:
    ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path))
    {
        if (!node_.is_object()) {
            throw ConfigError((path_.empty() ? std::string("document") : path_) +
                              ": expected an object");
        }
    }

    const json* find(const std::string& key)
    {
        used_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    const json& require(const std::string& key)
    {
        const json* value = find(key);
        if (value == nullptr) {
            throw ConfigError(join(path_, key) + ": required field is missing");
        }
        return *value;
    }

    std::string path(const std::string& key) const { return join(path_, key); }

    /// Rejects unknown keys up front, before any required-field check.
    void allow_only(std::initializer_list<const char*> keys) const
    {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (std::find_if(keys.begin(), keys.end(),
                             [&](const char* k) { return it.key() == k; }) == keys.end()) {
                throw ConfigError("unknown key \"" + it.key() + "\" at " +
                                  (path_.empty() ? std::string("top level") : path_));
            }
        }
    }

    void finish() const
    {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!used_.contains(it.key())) {
                throw ConfigError("unknown key \"" + it.key() + "\" at " +
                                  (path_.empty() ? std::string("top level") : path_));
            }
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> used_;
};

double number(const json& value, const std::string& path)
{
    if (!value.is_number()) {
        throw ConfigError(path + ": expected a number");
    }
    const double v = value.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(path + ": must be finite");
    }
    return v;
}

double positive(const json& value, const std::string& path)
{
    const double v = number(value, path);
    if (!(v > 0.0)) {
        throw ConfigError(path + ": must be positive");
    }
    return v;
}

long long integer(const json& value, const std::string& path)
{
    if (value.is_number_integer()) {
        return value.get<long long>();
    }
    if (value.is_number_float()) {
        const double v = value.get<double>();
        if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 9e15) {
            return static_cast<long long>(v);
        }
    }
    throw ConfigError(path + ": expected an integer");
}

std::size_t count(const json& value, const std::string& path)
{
    const long long v = integer(value, path);
    if (v < 0) {
        throw ConfigError(path + ": must be non-negative");
    }
    return static_cast<std::size_t>(v);
}

std::string text(const json& value, const std::string& path)
{
    if (!value.is_string()) {
        throw ConfigError(path + ": expected a string");
    }
    return value.get<std::string>();
}

const json& array(const json& value, const std::string& path)
{
    if (!value.is_array()) {
        throw ConfigError(path + ": expected an array");
    }
    return value;
}

UnitSystem parse_units(const json& node, const std::string& path)
{
    if (node.is_string()) {
        if (node.get<std::string>() != "natural") {
            throw ConfigError(path + ": unknown unit system \"" + node.get<std::string>() + "\"");
        }
        return UnitSystem::natural();
    }
    ObjectReader r(node, path);
    const double hbar = positive(r.require("hbar"), r.path("hbar"));
    const double k_B = positive(r.require("k_B"), r.path("k_B"));
    const double mass = positive(r.require("mass"), r.path("mass"));
    r.finish();
    return UnitSystem::make(hbar, k_B, mass);
}

struct GridFields {
    double x_min;
    double x_max;
    std::size_t n_points;
};

GridFields parse_grid(const json& node, const std::string& path)
{
    ObjectReader r(node, path);
    GridFields g{number(r.require("x_min"), r.path("x_min")),
                 number(r.require("x_max"), r.path("x_max")),
                 count(r.require("n_points"), r.path("n_points"))};
    r.finish();
    if (!(g.x_max > g.x_min)) {
        throw ConfigError(path + ": degenerate interval (x_max must exceed x_min)");
    }
    if (g.n_points < 3) {
        throw ConfigError(path + ".n_points: must be at least 3");
    }
    return g;
}

DegeneracyPolicy parse_degeneracy(const json& node, const std::string& path)
{
    if (node.is_string()) {
        if (node.get<std::string>() != "all_ones") {
            throw ConfigError(path + ": unknown policy \"" + node.get<std::string>() + "\"");
        }
        return AllOnes{};
    }
    ObjectReader r(node, path);
    const std::string policy = text(r.require("policy"), r.path("policy"));
    DegeneracyPolicy out = AllOnes{};
    if (policy == "explicit") {
        const json& g = array(r.require("g"), r.path("g"));
        ExplicitDegeneracies table;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const long long v = integer(g[i], index_path(r.path("g"), i));
            if (v < 1 || v > 1000000000) {
                throw ConfigError(index_path(r.path("g"), i) + ": degeneracy must be >= 1");
            }
            table.g.push_back(static_cast<int>(v));
        }
        if (table.g.empty()) {
            throw ConfigError(r.path("g") + ": table must not be empty");
        }
        out = std::move(table);
    } else if (policy == "cluster") {
        out = ClusterDegeneracies{positive(r.require("tolerance"), r.path("tolerance"))};
    } else if (policy != "all_ones") {
        throw ConfigError(r.path("policy") + ": unknown policy \"" + policy + "\"");
    }
    r.finish();
    return out;
}

double temperature(const json& value, const std::string& path)
{
    const double T = number(value, path);
    if (T < 0.0) {
        throw ConfigError(path + ": temperature must be >= 0");
    }
    return T;
}

EvolutionConfig parse_evolution(const json& node, const std::string& path)
{
    ObjectReader r(node, path);
    EvolutionConfig evo;
    const json* level = r.find("level");
    const json* components = r.find("components");
    if ((level == nullptr) == (components == nullptr)) {
        throw ConfigError(path + ": exactly one of \"level\" or \"components\" is required");
    }
    if (level != nullptr) {
        evo.components.push_back({count(*level, r.path("level")), {1.0, 0.0}});
    } else {
        const std::string cpath = r.path("components");
        const json& list = array(*components, cpath);
        if (list.empty()) {
            throw ConfigError(cpath + ": needs at least one component");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            ObjectReader c(list[i], index_path(cpath, i));
            EvolutionComponent comp;
            comp.level = count(c.require("level"), c.path("level"));
            const json* re = c.find("re");
            const json* im = c.find("im");
            comp.coeff = {re ? number(*re, c.path("re")) : 0.0, im ? number(*im, c.path("im")) : 0.0};
            c.finish();
            evo.components.push_back(comp);
        }
    }
    const json& times = array(r.require("times"), r.path("times"));
    for (std::size_t i = 0; i < times.size(); ++i) {
        evo.times.push_back(number(times[i], index_path(r.path("times"), i)));
    }
    if (const json* T = r.find("temperature")) {
        evo.temperature = temperature(*T, r.path("temperature"));
    }
    if (const json* stride = r.find("x_stride")) {
        evo.x_stride = count(*stride, r.path("x_stride"));
        if (evo.x_stride < 1) {
            throw ConfigError(r.path("x_stride") + ": must be >= 1");
        }
    }
    r.finish();
    return evo;
}

EnsembleConfig parse_ensemble(const json& node, const std::string& path)
{
    ObjectReader r(node, path);
    EnsembleConfig out;
    out.temperature = temperature(r.require("temperature"), r.path("temperature"));
    const std::string spath = r.path("states");
    const json& states = array(r.require("states"), spath);
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string ipath = index_path(spath, i);
        ObjectReader s(states[i], ipath);
        Microstate state;
        state.P = number(s.require("P"), s.path("P"));
        if (const json* pair = s.find("pair_energy")) {
            state.pair_energy = number(*pair, s.path("pair_energy"));
        }
        const std::string ppath = s.path("particles");
        const json& particles = array(s.require("particles"), ppath);
        for (std::size_t j = 0; j < particles.size(); ++j) {
            ObjectReader p(particles[j], index_path(ppath, j));
            ParticleRecord rec;
            rec.kin = number(p.require("kin"), p.path("kin"));
            rec.pot = number(p.require("pot"), p.path("pot"));
            if (const json* g = p.find("g")) {
                const long long v = integer(*g, p.path("g"));
                if (v < 1 || v > 1000000000) {
                    throw ConfigError(p.path("g") + ": degeneracy must be >= 1");
                }
                rec.g = static_cast<int>(v);
            }
            rec.p = number(p.require("p"), p.path("p"));
            if (!(rec.p > 0.0) || rec.p > 1.0) {
                throw ConfigError(p.path("p") + ": probability must lie in (0, 1]");
            }
            p.finish();
            state.particles.push_back(rec);
        }
        s.finish();
        out.ensemble.states.push_back(std::move(state));
    }
    try {
        validate(out.ensemble);
    } catch (const InvalidInput& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return out;
}

} // namespace

OutputFormat parse_format(std::string_view name)
{
    if (name == "csv") {
        return OutputFormat::csv;
    }
    if (name == "report") {
        return OutputFormat::report;
    }
    throw ConfigError("unknown output format \"" + std::string(name) + "\" (expected csv or report)");
}

RunConfig parse_config(std::string_view text_in)
{
    json doc;
    try {
        doc = json::parse(text_in.begin(), text_in.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }

    RunConfig cfg;
    ObjectReader top(doc, "");
    top.allow_only({"units", "mass", "grid", "potential", "levels", "degeneracy", "temperatures",
                    "transitions", "evolution", "ensemble", "output"});

    if (const json* units = top.find("units")) {
        cfg.units = parse_units(*units, "units");
    }
    cfg.mass = cfg.units.mass_default();
    if (const json* mass = top.find("mass")) {
        cfg.mass = positive(*mass, "mass");
    }

    std::optional<GridFields> grid;
    if (const json* g = top.find("grid")) {
        grid = parse_grid(*g, "grid");
    }

    const json& pot = top.require("potential");
    {
        ObjectReader r(pot, "potential");
        const std::string type = text(r.require("type"), r.path("type"));
        if (const json* offset = r.find("offset")) {
            cfg.potential.offset = number(*offset, r.path("offset"));
        }
        if (type == "harmonic") {
            HarmonicPotential ho{cfg.mass, 1.0};
            if (const json* m = r.find("mass")) {
                ho.mass = positive(*m, r.path("mass"));
                if (top.find("mass") == nullptr) {
                    cfg.mass = ho.mass;
                }
            }
            if (const json* w = r.find("omega")) {
                ho.omega_osc = positive(*w, r.path("omega"));
            }
            cfg.potential.shape = ho;
            if (!grid) {
                grid = GridFields{-10.0, 10.0, 2001};
            }
        } else if (type == "infinite_well") {
            double width = grid ? grid->x_max - grid->x_min : std::numbers::pi;
            if (const json* w = r.find("width")) {
                width = positive(*w, r.path("width"));
            }
            if (!grid) {
                grid = GridFields{0.0, width, 2001};
            }
            cfg.potential.shape = InfiniteWell{width};
        } else if (type == "tabulated") {
            const json& values = array(r.require("values"), r.path("values"));
            TabulatedPotential tab;
            for (std::size_t i = 0; i < values.size(); ++i) {
                tab.values.push_back(number(values[i], index_path(r.path("values"), i)));
            }
            if (!grid) {
                throw ConfigError("grid: required for a tabulated potential");
            }
            cfg.potential.shape = std::move(tab);
        } else {
            throw ConfigError(r.path("type") + ": unknown potential type \"" + type + "\"");
        }
        r.finish();
    }
    cfg.grid = Grid1D(grid->x_min, grid->x_max, grid->n_points);
    try {
        (void)eval_potential(cfg.potential, cfg.grid);
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("potential: ") + e.what());
    }

    if (const json* levels = top.find("levels")) {
        cfg.levels = count(*levels, "levels");
    }
    if (cfg.levels < 1) {
        throw ConfigError("levels: must be >= 1");
    }
    if (cfg.levels > cfg.grid.interior_size()) {
        throw ConfigError("levels: " + std::to_string(cfg.levels) + " exceeds the " +
                          std::to_string(cfg.grid.interior_size()) + " interior grid nodes");
    }

    if (const json* degeneracy = top.find("degeneracy")) {
        cfg.degeneracy = parse_degeneracy(*degeneracy, "degeneracy");
        if (const auto* table = std::get_if<ExplicitDegeneracies>(&cfg.degeneracy)) {
            if (table->g.size() != cfg.levels) {
                throw ConfigError("degeneracy.g: table has " + std::to_string(table->g.size()) +
                                  " entries but levels is " + std::to_string(cfg.levels));
            }
        }
    }

    if (const json* temps = top.find("temperatures")) {
        const json& list = array(*temps, "temperatures");
        cfg.temperatures.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            cfg.temperatures.push_back(temperature(list[i], index_path("temperatures", i)));
        }
    }

    if (const json* transitions = top.find("transitions")) {
        const json& list = array(*transitions, "transitions");
        for (std::size_t k = 0; k < list.size(); ++k) {
            const std::string kpath = index_path("transitions", k);
            const json& pair = array(list[k], kpath);
            if (pair.size() != 2) {
                throw ConfigError(kpath + ": expected [i, j]");
            }
            const std::size_t i = count(pair[0], index_path(kpath, 0));
            const std::size_t j = count(pair[1], index_path(kpath, 1));
            if (i >= cfg.levels || j >= cfg.levels) {
                throw ConfigError(kpath + ": level index must be below levels (" +
                                  std::to_string(cfg.levels) + ")");
            }
            cfg.transitions.emplace_back(i, j);
        }
    }

    if (const json* evo = top.find("evolution")) {
        cfg.evolution = parse_evolution(*evo, "evolution");
        for (std::size_t c = 0; c < cfg.evolution->components.size(); ++c) {
            if (cfg.evolution->components[c].level >= cfg.levels) {
                throw ConfigError("evolution: level " +
                                  std::to_string(cfg.evolution->components[c].level) +
                                  " must be below levels (" + std::to_string(cfg.levels) + ")");
            }
        }
    }

    if (const json* ens = top.find("ensemble")) {
        cfg.ensemble = parse_ensemble(*ens, "ensemble");
    }

    if (const json* out = top.find("output")) {
        ObjectReader r(*out, "output");
        if (const json* dir = r.find("directory")) {
            cfg.output_directory = text(*dir, r.path("directory"));
        }
        if (const json* fmt = r.find("format")) {
            try {
                cfg.format = parse_format(text(*fmt, r.path("format")));
            } catch (const ConfigError& e) {
                throw ConfigError(std::string("output.format: ") + e.what());
            }
        }
        r.finish();
    }

    top.finish();
    return cfg;
}

} // namespace ftqm::cli
