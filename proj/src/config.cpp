#include "lindisk/config.hpp"

#include "lindisk/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace lindisk {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

long to_long(const std::string& v, const std::string& key, int line) {
    try {
        size_t pos = 0;
        long r = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": '" + key +
                          "' expects an integer, got '" + v + "'");
    }
}

Integer to_integer(const std::string& v, const std::string& key, int line) {
    try {
        return Integer(v);
    } catch (const std::exception&) {
        throw ConfigError("line " + std::to_string(line) + ": '" + key +
                          "' expects an integer, got '" + v + "'");
    }
}

std::vector<std::string> split(const std::string& v, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(v);
    while (std::getline(is, cur, sep)) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

// "pi^N = p" with optional whitespace
bool parse_pure_relation(const std::string& rel, long& degree_out) {
    std::string s;
    for (char c : rel)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.rfind("pi^", 0) != 0) return false;
    size_t eq = s.find('=');
    if (eq == std::string::npos || s.substr(eq + 1) != "p") return false;
    const std::string num = s.substr(3, eq - 3);
    if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
        }))
        return false;
    degree_out = std::stol(num);
    return true;
}

} // namespace

FieldPtr JobConfig::make_field() const {
    if (p == 0)
        throw ConfigError("[field] p is required");
    if (pi_digits < 1)
        throw ConfigError("[precision] pi_digits must be positive");
    if (kind == "trivial") {
        if (degree > 1)
            throw ConfigError("kind = trivial fixes degree = 1");
        return Field::q_p(p, pi_digits);
    }
    if (kind == "eisenstein") {
        if (!coefficients.empty()) {
            if (degree > 0 && degree != static_cast<long>(coefficients.size()))
                throw ConfigError("degree disagrees with the coefficient list length");
            return Field::eisenstein(p, coefficients, pi_digits);
        }
        long rel_degree = 0;
        if (!relation.empty()) {
            if (!parse_pure_relation(relation, rel_degree))
                throw ConfigError("relation must have the form 'pi^N = p' (use "
                                  "'coefficients' for general Eisenstein polynomials)");
            if (degree > 0 && degree != rel_degree)
                throw ConfigError("degree disagrees with the relation");
            return Field::eisenstein_pure(p, rel_degree, pi_digits);
        }
        if (degree > 0)
            return Field::eisenstein_pure(p, degree, pi_digits);
        throw ConfigError("kind = eisenstein needs 'relation', 'coefficients' or 'degree'");
    }
    if (kind == "cyclotomic") {
        if (cyclo_order == 0)
            throw ConfigError("kind = cyclotomic needs 'order' (a power p^s)");
        FieldPtr f = Field::cyclotomic(p, cyclo_order, pi_digits);
        if (degree > 0 && degree != f->degree())
            throw ConfigError("degree " + std::to_string(degree) +
                              " disagrees with the cyclotomic degree " +
                              std::to_string(f->degree()));
        return f;
    }
    throw ConfigError("unknown field kind '" + kind + "'");
}

JobConfig parse_config(const std::string& text) {
    JobConfig cfg;
    std::istringstream is(text);
    std::string raw;
    std::string section;
    int line = 0;
    bool saw_p = false;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        const size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ConfigError("line " + std::to_string(line) + ": malformed section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section != "field" && section != "precision" && section != "multiplier" &&
                section != "map" && section != "job")
                throw ConfigError("line " + std::to_string(line) + ": unknown section [" +
                                  section + "]");
            continue;
        }
        const size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (section.empty())
            throw ConfigError("line " + std::to_string(line) + ": key outside any section");

        if (section == "field") {
            if (key == "p") {
                cfg.p = to_integer(value, key, line);
                saw_p = true;
            } else if (key == "kind") {
                cfg.kind = value;
            } else if (key == "degree") {
                cfg.degree = to_long(value, key, line);
            } else if (key == "relation") {
                // the value may itself contain '='; recover it from the raw line
                cfg.relation = trim(s.substr(eq + 1));
            } else if (key == "coefficients") {
                for (const auto& part : split(value, ','))
                    cfg.coefficients.push_back(to_integer(part, key, line));
            } else if (key == "order") {
                cfg.cyclo_order = to_integer(value, key, line);
            } else {
                throw ConfigError("line " + std::to_string(line) + ": unknown [field] key '" +
                                  key + "'");
            }
        } else if (section == "precision") {
            if (key == "pi_digits")
                cfg.pi_digits = to_long(value, key, line);
            else
                throw ConfigError("line " + std::to_string(line) +
                                  ": unknown [precision] key '" + key + "'");
        } else if (section == "multiplier") {
            if (key == "lambda")
                cfg.lambda_expr = value;
            else
                throw ConfigError("line " + std::to_string(line) +
                                  ": unknown [multiplier] key '" + key + "'");
        } else if (section == "map") {
            if (key == "series")
                cfg.map_expr = value;
            else
                throw ConfigError("line " + std::to_string(line) + ": unknown [map] key '" +
                                  key + "'");
        } else { // job
            if (key == "command")
                cfg.command = value;
            else if (key == "K")
                cfg.K = to_long(value, key, line);
            else if (key == "nmax")
                cfg.nmax = to_long(value, key, line);
            else if (key == "sweep")
                cfg.sweep = split(value, ';');
            else if (key == "suite")
                cfg.verify_suite = value;
            else
                throw ConfigError("line " + std::to_string(line) + ": unknown [job] key '" +
                                  key + "'");
        }
    }

    if (cfg.command.empty())
        throw ConfigError("[job] command is required (analyze | conjugacy | newton | verify)");
    if (cfg.command != "analyze" && cfg.command != "conjugacy" && cfg.command != "newton" &&
        cfg.command != "verify")
        throw ConfigError("unknown command '" + cfg.command + "'");
    if (cfg.command != "verify") {
        if (!saw_p)
            throw ConfigError("[field] p is required");
        cfg.make_field(); // validate the field data eagerly
        if (cfg.lambda_expr.empty() && cfg.sweep.empty())
            throw ConfigError("[multiplier] lambda is required");
        if (cfg.K < 1)
            throw ConfigError("[job] K must be >= 1");
        if (cfg.nmax < 0)
            throw ConfigError("[job] nmax must be >= 0");
    }
    return cfg;
}

JobConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace lindisk
