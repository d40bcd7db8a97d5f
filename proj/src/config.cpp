#include "thermoqvi/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "thermoqvi/io.hpp"

namespace thermoqvi {

struct Expression::Node {
    enum class Op { literal, var_x, var_y, var_t, add, sub, mul, div, neg, fmin, fmax, fabs };
    Op op = Op::literal;
    double value = 0.0;
    std::shared_ptr<const Node> a, b;

    double eval(double x, double y, double t) const {
        switch (op) {
            case Op::literal: return value;
            case Op::var_x: return x;
            case Op::var_y: return y;
            case Op::var_t: return t;
            case Op::add: return a->eval(x, y, t) + b->eval(x, y, t);
            case Op::sub: return a->eval(x, y, t) - b->eval(x, y, t);
            case Op::mul: return a->eval(x, y, t) * b->eval(x, y, t);
            case Op::div: return a->eval(x, y, t) / b->eval(x, y, t);
            case Op::neg: return -a->eval(x, y, t);
            case Op::fmin: return std::min(a->eval(x, y, t), b->eval(x, y, t));
            case Op::fmax: return std::max(a->eval(x, y, t), b->eval(x, y, t));
            case Op::fabs: return std::abs(a->eval(x, y, t));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Op = Expression::Node::Op;

NodePtr make_node(Op op, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->a = std::move(a);
    n->b = std::move(b);
    n->value = v;
    return n;
}

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing characters");
        return e;
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw ConfigError("expression error at offset " + std::to_string(pos_) + ": " + why);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr e = term();
        while (true) {
            if (consume('+'))
                e = make_node(Op::add, e, term());
            else if (consume('-'))
                e = make_node(Op::sub, e, term());
            else
                return e;
        }
    }
    NodePtr term() {
        NodePtr e = factor();
        while (true) {
            if (consume('*'))
                e = make_node(Op::mul, e, factor());
            else if (consume('/'))
                e = make_node(Op::div, e, factor());
            else
                return e;
        }
    }
    NodePtr factor() {
        if (consume('-')) return make_node(Op::neg, factor());
        return primary();
    }
    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = expr();
            if (!consume(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(std::string("unexpected character '") + c + "'");
    }
    NodePtr number() {
        size_t end = pos_;
        while (end < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '.' ||
                s_[end] == 'e' || s_[end] == 'E' ||
                ((s_[end] == '+' || s_[end] == '-') && end > pos_ &&
                 (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
            ++end;
        try {
            size_t used = 0;
            double v = std::stod(s_.substr(pos_, end - pos_), &used);
            if (used != end - pos_) fail("bad numeric literal");
            pos_ = end;
            return make_node(Op::literal, nullptr, nullptr, v);
        } catch (const std::exception&) {
            fail("bad numeric literal");
        }
    }
    NodePtr identifier() {
        size_t end = pos_;
        while (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) ++end;
        std::string name = s_.substr(pos_, end - pos_);
        pos_ = end;
        if (name == "x") return make_node(Op::var_x);
        if (name == "y") return make_node(Op::var_y);
        if (name == "t") return make_node(Op::var_t);
        if (name == "abs") {
            if (!consume('(')) fail("expected '(' after abs");
            NodePtr a = expr();
            if (!consume(')')) fail("expected ')'");
            return make_node(Op::fabs, a);
        }
        if (name == "min" || name == "max") {
            if (!consume('(')) fail("expected '(' after " + name);
            NodePtr a = expr();
            if (!consume(',')) fail("expected ',' in " + name);
            NodePtr b = expr();
            if (!consume(')')) fail("expected ')'");
            return make_node(name == "min" ? Op::fmin : Op::fmax, a, b);
        }
        fail("unknown identifier '" + name + "'");
    }
};

}  // namespace

Expression Expression::parse(const std::string& text) {
    Expression e;
    e.root_ = Parser(text).parse();
    e.text_ = text;
    return e;
}

double Expression::eval(double x, double y, double t) const {
    if (!root_) throw ConfigError("empty expression");
    double v = root_->eval(x, y, t);
    if (!std::isfinite(v)) throw ConfigError("expression evaluated to a non-finite value");
    return v;
}

ScalarField SourceSpec::make(const Grid& grid, double t) const {
    if (!present) throw ConfigError("source not specified");
    if (from_csv) {
        ScalarField f = read_field_csv(csv_path);
        if (f.grid != grid) throw ConfigError("CSV field grid does not match scenario grid");
        return f;
    }
    return ScalarField::from_fn(grid, [&](double x, double y) { return expr.eval(x, y, t); });
}

FieldGenerator SourceSpec::generator(const Grid& grid) const {
    SourceSpec copy = *this;
    if (from_csv) {
        ScalarField f = make(grid, 0.0);
        return [f](double) { return f; };
    }
    return [copy, grid](double t) { return copy.make(grid, t); };
}

Sources ScenarioConfig::make_sources(const Grid& grid, double t) const {
    Sources s;
    s.f = f.make(grid, t);
    s.g = g.make(grid, t);
    s.h1 = h1.make(grid, t);
    s.h2 = h2.make(grid, t);
    return s;
}

TimeSources ScenarioConfig::make_time_sources(const Grid& grid) const {
    if (!theta1_init.present || !theta2_init.present)
        throw ConfigError("quasistatic run needs initial.theta1 and initial.theta2");
    TimeSources ts;
    ts.f = f.generator(grid);
    ts.g = g.generator(grid);
    ts.h1 = h1.generator(grid);
    ts.h2 = h2.generator(grid);
    ts.theta1_init = theta1_init.make(grid, 0.0);
    ts.theta2_init = theta2_init.make(grid, 0.0);
    return ts;
}

namespace {

SourceSpec parse_source(const std::string& value) {
    SourceSpec s;
    s.present = true;
    if (value.rfind("csv:", 0) == 0) {
        s.from_csv = true;
        s.csv_path = value.substr(4);
        if (s.csv_path.empty()) throw ConfigError("csv: needs a path");
    } else {
        s.expr = Expression::parse(value);
    }
    return s;
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        double v = std::stod(value, &used);
        while (used < value.size() && std::isspace(static_cast<unsigned char>(value[used])))
            ++used;
        if (used != value.size()) throw ConfigError("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected a number, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    double v = parse_number(key, value);
    int i = static_cast<int>(std::lround(v));
    if (i != v) throw ConfigError("key '" + key + "': expected an integer");
    return i;
}

CoefficientFunction parse_a_table(const std::string& value) {
    std::vector<double> s, v;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw ConfigError("coeffs.a_table entries must look like s:value");
        s.push_back(parse_number("coeffs.a_table", item.substr(0, colon)));
        v.push_back(parse_number("coeffs.a_table", item.substr(colon + 1)));
    }
    return CoefficientFunction::table(std::move(s), std::move(v));
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
    ScenarioConfig cfg;
    cfg.raw_text = text;
    cfg.hash = content_hash(text);

    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (kv.count(key))
            throw ConfigError("duplicate key '" + key + "'");
        kv[key] = value;
    }

    bool time_seen = false;
    for (const auto& [key, value] : kv) {
        if (key == "grid.dim") cfg.dim = parse_int(key, value);
        else if (key == "grid.n") cfg.n = parse_int(key, value);
        else if (key == "coeffs.kappa1") cfg.coeffs.kappa1 = parse_number(key, value);
        else if (key == "coeffs.kappa2") cfg.coeffs.kappa2 = parse_number(key, value);
        else if (key == "coeffs.c1") cfg.coeffs.c1 = parse_number(key, value);
        else if (key == "coeffs.c2") cfg.coeffs.c2 = parse_number(key, value);
        else if (key == "coeffs.b1") cfg.coeffs.b1 = parse_number(key, value);
        else if (key == "coeffs.b2") cfg.coeffs.b2 = parse_number(key, value);
        else if (key == "coeffs.alpha") cfg.coeffs.alpha = parse_number(key, value);
        else if (key == "coeffs.a") cfg.coeffs.a = CoefficientFunction::constant(parse_number(key, value));
        else if (key == "coeffs.a_table") cfg.coeffs.a = parse_a_table(value);
        else if (key == "source.f") cfg.f = parse_source(value);
        else if (key == "source.g") cfg.g = parse_source(value);
        else if (key == "source.h1") cfg.h1 = parse_source(value);
        else if (key == "source.h2") cfg.h2 = parse_source(value);
        else if (key == "initial.theta1") cfg.theta1_init = parse_source(value);
        else if (key == "initial.theta2") cfg.theta2_init = parse_source(value);
        else if (key == "time.T") { cfg.tgrid.horizon = parse_number(key, value); time_seen = true; }
        else if (key == "time.N") { cfg.tgrid.steps = parse_int(key, value); time_seen = true; }
        else if (key == "time.mq") cfg.mq = parse_int(key, value);
        else if (key == "schedule.eps0") cfg.schedule.eps0 = parse_number(key, value);
        else if (key == "schedule.factor") cfg.schedule.factor = parse_number(key, value);
        else if (key == "schedule.eps_min") cfg.schedule.eps_min = parse_number(key, value);
        else if (key == "solver.lin_tol") cfg.solver.lin_tol = parse_number(key, value);
        else if (key == "solver.pair_tol") cfg.solver.pair_tol = parse_number(key, value);
        else if (key == "solver.psor_tol") cfg.solver.psor_tol = parse_number(key, value);
        else if (key == "solver.fp_tol") cfg.solver.fp_tol = parse_number(key, value);
        else if (key == "solver.fp_max_outer") cfg.solver.fp_max_outer = parse_int(key, value);
        else if (key == "solver.fp_damping") cfg.solver.fp_damping = parse_number(key, value);
        else if (key == "solver.omega") cfg.solver.omega = parse_number(key, value);
        else if (key == "contact.delta") cfg.contact.delta_contact = parse_number(key, value);
        else if (key == "check.tol") cfg.checks.tol = parse_number(key, value);
        else if (key == "check.ls_threshold") cfg.checks.ls_threshold = parse_number(key, value);
        else if (key == "run.seed") { cfg.seed = static_cast<unsigned>(parse_int(key, value)); cfg.checks.seed = cfg.seed; }
        else if (key == "output.dir") cfg.out_dir = value;
        else throw ConfigError("unknown key '" + key + "'");
    }

    if (cfg.dim != 1 && cfg.dim != 2) throw ConfigError("grid.dim must be 1 or 2");
    if (cfg.n < 2) throw ConfigError("grid.n must be >= 2");
    cfg.coeffs.validate();
    if (!cfg.f.present || !cfg.g.present || !cfg.h1.present || !cfg.h2.present)
        throw ConfigError("sources f, g, h1, h2 must all be specified");
    cfg.has_time = time_seen;
    if (cfg.has_time) cfg.tgrid.validate();
    if (cfg.mq < 1) throw ConfigError("time.mq must be >= 1");
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace thermoqvi
