#include "acnsf/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <sstream>

namespace acnsf {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool consumed = false;
};

using Table = std::map<std::string, Entry>;  // "section.key" -> entry

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

Table tokenize(const std::string& text) {
    Table table;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("experiment_cli.parse_config: malformed section header (line " +
                                  std::to_string(lineno) + ")");
            section = trim(line.substr(1, line.size() - 2));
            static const char* known[] = {"grid", "physics", "time", "data", "sweep",
                                          "diagnostics"};
            if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
                    return section == k;
                }) == std::end(known))
                throw ConfigError("experiment_cli.parse_config: unknown section [" + section +
                                  "] (line " + std::to_string(lineno) + ")");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos || section.empty())
            throw ConfigError("experiment_cli.parse_config: expected key = value (line " +
                              std::to_string(lineno) + ")");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("experiment_cli.parse_config: empty key or value (line " +
                              std::to_string(lineno) + ")");
        std::string full = section + "." + key;
        if (table.count(full))
            throw ConfigError("experiment_cli.parse_config: duplicate key [" + section + "] " +
                              key + " (line " + std::to_string(lineno) + ")");
        table[full] = Entry{value, lineno, false};
    }
    return table;
}

class Extractor {
  public:
    explicit Extractor(Table& t) : table_(t) {}

    bool has(const std::string& full) const { return table_.count(full) > 0; }

    Entry* find(const std::string& full) {
        auto it = table_.find(full);
        if (it == table_.end()) return nullptr;
        it->second.consumed = true;
        return &it->second;
    }

    std::string require_string(const std::string& section, const std::string& key) {
        Entry* e = find(section + "." + key);
        if (!e)
            throw ConfigError("experiment_cli.parse_config: missing required key [" + section +
                              "] " + key);
        return e->value;
    }

    double require_double(const std::string& section, const std::string& key) {
        Entry* e = find(section + "." + key);
        if (!e)
            throw ConfigError("experiment_cli.parse_config: missing required key [" + section +
                              "] " + key);
        return to_double(section, key, *e);
    }

    double optional_double(const std::string& section, const std::string& key, double dflt) {
        Entry* e = find(section + "." + key);
        return e ? to_double(section, key, *e) : dflt;
    }

    long long optional_int(const std::string& section, const std::string& key, long long dflt) {
        Entry* e = find(section + "." + key);
        if (!e) return dflt;
        double v = to_double(section, key, *e);
        long long i = std::llround(v);
        if (std::abs(v - static_cast<double>(i)) > 1e-9)
            throw ConfigError("experiment_cli.parse_config: [" + section + "] " + key +
                              " must be an integer (line " + std::to_string(e->line) + ")");
        return i;
    }

    long long require_int(const std::string& section, const std::string& key) {
        require_string(section, key);  // presence check with the right message
        return optional_int(section, key, 0);
    }

    bool optional_bool(const std::string& section, const std::string& key, bool dflt) {
        Entry* e = find(section + "." + key);
        if (!e) return dflt;
        if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
        if (e->value == "false" || e->value == "0" || e->value == "no") return false;
        throw ConfigError("experiment_cli.parse_config: [" + section + "] " + key +
                          " must be a boolean (line " + std::to_string(e->line) + ")");
    }

    [[noreturn]] void fail_range(const std::string& section, const std::string& key,
                                 const std::string& what, int line) {
        throw ConfigError("[" + section + "] " + key + " " + what + " (line " +
                          std::to_string(line) + ")");
    }

    int line_of(const std::string& section, const std::string& key) {
        auto it = table_.find(section + "." + key);
        return it == table_.end() ? 0 : it->second.line;
    }

    void reject_unconsumed() const {
        for (const auto& [full, e] : table_) {
            if (!e.consumed) {
                std::size_t dot = full.find('.');
                throw ConfigError("experiment_cli.parse_config: unknown key [" +
                                  full.substr(0, dot) + "] " + full.substr(dot + 1) + " (line " +
                                  std::to_string(e.line) + ")");
            }
        }
    }

  private:
    double to_double(const std::string& section, const std::string& key, const Entry& e) {
        // accept simple fractions like 3/2 for the pad factor
        std::size_t slash = e.value.find('/');
        try {
            if (slash != std::string::npos) {
                double num = std::stod(e.value.substr(0, slash));
                double den = std::stod(e.value.substr(slash + 1));
                return num / den;
            }
            std::size_t pos = 0;
            double v = std::stod(e.value, &pos);
            if (pos != e.value.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("experiment_cli.parse_config: [" + section + "] " + key +
                              " is not a number (line " + std::to_string(e.line) + ")");
        }
    }

    Table& table_;
};

DataFamily parse_family(const std::string& v, int line) {
    if (v == "taylor_green") return DataFamily::TaylorGreen;
    if (v == "random") return DataFamily::Random;
    if (v == "incompatible") return DataFamily::Incompatible;
    if (v == "acoustic") return DataFamily::Acoustic;
    if (v == "heat_decay") return DataFamily::HeatDecay;
    throw ConfigError(
        "experiment_cli.parse_config: [data] family must be one of taylor_green, random, "
        "incompatible, acoustic, heat_decay (line " +
        std::to_string(line) + ")");
}

P0Mode parse_p0(const std::string& v, int line) {
    if (v == "default") return P0Mode::FamilyDefault;
    if (v == "zero") return P0Mode::Zero;
    if (v == "compatible") return P0Mode::Compatible;
    throw ConfigError(
        "experiment_cli.parse_config: [data] p0 must be default, zero or compatible (line " +
        std::to_string(line) + ")");
}

std::vector<double> parse_list(const std::string& v, const std::string& where, int line) {
    std::vector<double> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("experiment_cli.parse_config: " + where +
                              " contains a non-number (line " + std::to_string(line) + ")");
        }
    }
    if (out.empty())
        throw ConfigError("experiment_cli.parse_config: " + where + " is empty (line " +
                          std::to_string(line) + ")");
    return out;
}

}  // namespace

SweepConfig ParsedConfig::sweep_config() const {
    SweepConfig sc;
    sc.base = run;
    sc.eps_list = eps_list;
    sc.norms = norms;
    sc.track_mode = track_mode;
    sc.record_pressure = record_pressure;
    sc.window_factor = window_factor;
    return sc;
}

ParsedConfig parse_config(const std::string& text) {
    Table table = tokenize(text);
    Extractor x(table);
    ParsedConfig out;

    // [grid]
    const long long dim = x.require_int("grid", "dim");
    const long long n = x.require_int("grid", "n");
    const double length = x.optional_double("grid", "length", two_pi);
    const double pad = x.optional_double("grid", "pad", 1.5);
    if (dim != 2 && dim != 3)
        x.fail_range("grid", "dim", "must be 2 or 3", x.line_of("grid", "dim"));
    if (n < 8 || n % 2 != 0)
        x.fail_range("grid", "n", "must be even and >= 8", x.line_of("grid", "n"));
    if (!(length > 0.0))
        x.fail_range("grid", "length", "must be > 0", x.line_of("grid", "length"));
    try {
        out.run.grid = make_grid(static_cast<int>(dim), static_cast<int>(n), length, pad);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("experiment_cli.parse_config: ") + e.what());
    }

    // [sweep] decides the config kind
    out.is_sweep = x.has("sweep.eps_list");
    if (out.is_sweep) {
        Entry* e = x.find("sweep.eps_list");
        out.eps_list = parse_list(e->value, "[sweep] eps_list", e->line);
        for (std::size_t i = 0; i < out.eps_list.size(); ++i) {
            if (!(out.eps_list[i] > 0.0))
                x.fail_range("sweep", "eps_list", "entries must be > 0", e->line);
            if (i > 0 && !(out.eps_list[i] < out.eps_list[i - 1]))
                x.fail_range("sweep", "eps_list", "must be strictly decreasing", e->line);
        }
    }

    // [physics]
    if (out.is_sweep) {
        out.run.eps = x.optional_double("physics", "eps", out.eps_list.front());
    } else {
        out.run.eps = x.require_double("physics", "eps");
    }
    if (!(out.run.eps > 0.0))
        x.fail_range("physics", "eps", "must be > 0", x.line_of("physics", "eps"));
    out.run.mu = x.optional_double("physics", "mu", 1.0);
    out.run.kappa = x.optional_double("physics", "kappa", 1.0);
    if (out.run.mu < 0.0)
        x.fail_range("physics", "mu", "must be >= 0", x.line_of("physics", "mu"));
    if (out.run.kappa < 0.0)
        x.fail_range("physics", "kappa", "must be >= 0", x.line_of("physics", "kappa"));
    out.run.nonlinear = x.optional_bool("physics", "nonlinear", true);

    // [time]
    out.run.T = x.require_double("time", "T");
    if (!(out.run.T > 0.0)) x.fail_range("time", "T", "must be > 0", x.line_of("time", "T"));
    out.run.dt = x.optional_double("time", "dt", 0.0);
    out.run.cfl = x.optional_double("time", "cfl", 0.0);
    if (out.run.dt <= 0.0 && out.run.cfl <= 0.0)
        throw ConfigError(
            "experiment_cli.parse_config: missing required key [time] dt (or cfl)");
    if (x.has("time.dt") && !(out.run.dt > 0.0))
        x.fail_range("time", "dt", "must be > 0", x.line_of("time", "dt"));
    out.run.save_stride = static_cast<int>(x.optional_int("time", "save_stride", 1));
    if (out.run.save_stride < 1)
        x.fail_range("time", "save_stride", "must be >= 1", x.line_of("time", "save_stride"));

    // [data]
    {
        std::string fam = x.require_string("data", "family");
        out.run.family = parse_family(fam, x.line_of("data", "family"));
        out.run.seed = static_cast<std::uint64_t>(x.optional_int("data", "seed", 0));
        Entry* p0 = x.find("data.p0");
        if (p0) out.run.p0_mode = parse_p0(p0->value, p0->line);
    }

    // [diagnostics]
    {
        Entry* norms = x.find("diagnostics.norms");
        if (norms && norms->value != "all") {
            std::istringstream in(norms->value);
            std::string item;
            while (std::getline(in, item, ',')) {
                item = trim(item);
                if (item.empty()) continue;
                auto known = all_sweep_norms();
                if (std::find(known.begin(), known.end(), item) == known.end())
                    throw ConfigError("experiment_cli.parse_config: [diagnostics] norms: unknown "
                                      "norm " +
                                      item + " (line " + std::to_string(norms->line) + ")");
                out.norms.push_back(item);
            }
        }
        Entry* tm = x.find("diagnostics.track_mode");
        if (tm) {
            std::vector<double> m = parse_list(tm->value, "[diagnostics] track_mode", tm->line);
            if (static_cast<long long>(m.size()) != dim)
                x.fail_range("diagnostics", "track_mode", "needs one integer per axis", tm->line);
            std::array<int, 3> mode{0, 0, 0};
            for (std::size_t i = 0; i < m.size(); ++i) mode[i] = static_cast<int>(m[i]);
            out.track_mode = mode;
        }
        out.record_pressure = x.optional_bool("diagnostics", "record_pressure", false);
        out.window_factor = x.optional_double("diagnostics", "window_factor", 8.0);
        if (!(out.window_factor > 0.0))
            x.fail_range("diagnostics", "window_factor", "must be > 0",
                         x.line_of("diagnostics", "window_factor"));
    }

    x.reject_unconsumed();
    return out;
}

}  // namespace acnsf
