#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "divsmooth/divsmooth.hpp"

namespace divsmooth::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "divsmooth/1";
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Malformed command lines, unreadable files and bad JSON (exit code 1).
class UsageError : public std::runtime_error {
public:
    UsageError(std::string kind, const std::string& msg) : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

enum class Kind { Vec, Num, Count, Text, Flag };

struct Field {
    Field(std::string k, Kind kd, std::string h) : key(std::move(k)), kind(kd), help(std::move(h)) {}

    std::string key;
    Kind kind;
    std::string help;
    bool echo = true;
    std::string text;  // value given on the command line
    bool flag = false;
};

struct Command {
    Command(std::string n, std::vector<Field> f) : name(std::move(n)), fields(std::move(f)) {}

    std::string name;
    std::vector<Field> fields;
    std::string input_path, output_path, format = "json";
    CLI::App* app = nullptr;
};

// ---------------------------------------------------------------- parsing

double parse_number(const std::string& text, const std::string& what)
{
    std::string t = text;
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
    if (t == "inf" || t == "+inf" || t == "infinity") return kInf;
    if (t == "-inf" || t == "-infinity") return -kInf;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || std::isnan(v))
        throw UsageError("ParseError", "cannot parse '" + text + "' as a number for " + what);
    return v;
}

json number_json(double v)
{
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    return v;
}

json parse_vector_text(const std::string& text, const std::string& what)
{
    if (text == "uniform" || text == "e1") return text;
    json arr = json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) arr.push_back(parse_number(item, what));
    if (arr.empty()) throw UsageError("ParseError", "empty vector literal for " + what);
    return arr;
}

std::uint64_t parse_count(const std::string& text, const std::string& what)
{
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (text.empty() || text[0] == '-' || end != text.c_str() + text.size())
        throw UsageError("ParseError", "cannot parse '" + text + "' as a non-negative integer for " + what);
    return v;
}

json field_json(const Field& f)
{
    switch (f.kind) {
    case Kind::Vec: return parse_vector_text(f.text, f.key);
    case Kind::Num: return number_json(parse_number(f.text, f.key));
    case Kind::Count: return parse_count(f.text, f.key);
    case Kind::Text: return f.text;
    case Kind::Flag: return f.flag;
    }
    return nullptr;
}

void check_json_kind(const std::string& key, Kind kind, const json& v)
{
    bool ok = false;
    switch (kind) {
    case Kind::Vec:
        ok = (v.is_string() && (v == "uniform" || v == "e1")) || v.is_array();
        if (v.is_array())
            for (const auto& e : v) ok = ok && (e.is_number() || (e.is_string() && (e == "inf" || e == "-inf")));
        break;
    case Kind::Num: ok = v.is_number() || (v.is_string() && (v == "inf" || v == "-inf")); break;
    case Kind::Count: ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); break;
    case Kind::Text: ok = v.is_string(); break;
    case Kind::Flag: ok = v.is_boolean(); break;
    }
    if (!ok) throw UsageError("ParseError", "input field '" + key + "' has the wrong type");
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw UsageError("IoError", "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("ParseError", "invalid JSON in '" + path + "': " + e.what());
    }
}

/// Resolves the command's input object: file input first, command-line flags override.
json resolve_input(const Command& cmd)
{
    json merged = json::object();
    if (!cmd.input_path.empty()) {
        json doc = read_json_file(cmd.input_path);
        if (!doc.is_object()) throw UsageError("ParseError", "input file must hold a JSON object");
        if (doc.contains("command") && doc["command"] != cmd.name)
            throw UsageError("ParseError", "input document was produced by '" + doc["command"].dump() + "'");
        json src = doc.contains("input") ? doc["input"] : doc;
        for (auto& [k, v] : src.items()) {
            if (k == "schema" || k == "command") continue;
            auto it = std::find_if(cmd.fields.begin(), cmd.fields.end(), [&](const Field& f) { return f.key == k; });
            if (it == cmd.fields.end()) throw UsageError("ParseError", "unknown input key '" + k + "'");
            check_json_kind(k, it->kind, v);
            merged[k] = v;
        }
    }
    for (const Field& f : cmd.fields) {
        const bool given = f.kind == Kind::Flag ? f.flag : !f.text.empty();
        if (given) merged[f.key] = field_json(f);
    }
    json ordered = json::object();
    for (const Field& f : cmd.fields)
        if (merged.contains(f.key)) ordered[f.key] = merged[f.key];
    return ordered;
}

// ---------------------------------------------------------------- typed access

class Input {
public:
    explicit Input(json j) : j_(std::move(j)) {}

    bool has(const std::string& k) const { return j_.contains(k); }
    const json& raw() const { return j_; }
    json echo(const Command& cmd) const
    {
        json e = json::object();
        for (const Field& f : cmd.fields)
            if (f.echo && j_.contains(f.key)) e[f.key] = j_[f.key];
        return e;
    }

    void set_default(const std::string& k, json v)
    {
        if (!j_.contains(k)) j_[k] = std::move(v);
    }

    const json& need(const std::string& k) const
    {
        if (!j_.contains(k)) throw UsageError("ParseError", "missing required input '" + k + "'");
        return j_[k];
    }

    double num(const std::string& k) const
    {
        const json& v = need(k);
        if (v.is_string()) return v == "inf" ? kInf : -kInf;
        return v.get<double>();
    }

    RenyiOrder order(const std::string& k) const { return RenyiOrder(num(k)); }

    std::size_t count(const std::string& k) const { return need(k).get<std::size_t>(); }

    std::string text(const std::string& k) const { return need(k).get<std::string>(); }

    bool flag(const std::string& k) const { return has(k) && j_[k].get<bool>(); }

    bool is_keyword(const std::string& k, const char* word) const
    {
        return has(k) && j_[k].is_string() && j_[k] == word;
    }

    /// Dimension for keyword vectors: explicit dim, else the length of an explicit p.
    std::optional<std::size_t> dim() const
    {
        if (has("dim")) return count("dim");
        if (has("p") && j_["p"].is_array()) return j_["p"].size();
        return std::nullopt;
    }

    ProbVec vec(const std::string& k) const
    {
        const json& v = need(k);
        if (v.is_string()) {
            const auto d = dim();
            if (!d) throw UsageError("ParseError", "keyword vector '" + k + "' needs --dim");
            return v == "uniform" ? ProbVec::uniform(*d) : ProbVec::e1(*d);
        }
        std::vector<double> x;
        for (const auto& e : v) x.push_back(e.is_string() ? (e == "inf" ? kInf : -kInf) : e.get<double>());
        return ProbVec::validate(x);
    }

private:
    json j_;
};

// ---------------------------------------------------------------- output

class Emitter {
public:
    explicit Emitter(double bit_scale) : scale_(bit_scale) {}

    static double round12(double v)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return std::strtod(buf, nullptr);
    }

    json num(double v) const
    {
        if (!std::isfinite(v)) return number_json(v);
        return round12(v);
    }

    json bits(double v) const { return std::isfinite(v) ? num(v * scale_) : num(v); }
    json bits(ExtReal v) const { return bits(v.value()); }

    json vec(std::span<const double> x) const
    {
        json arr = json::array();
        for (double v : x) arr.push_back(num(v));
        return arr;
    }

private:
    double scale_;
};

std::string csv_cell(const json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + csv_cell(v[i]);
        return s;
    }
    return v.dump();
}

void flatten(const json& doc, const std::string& prefix, std::vector<std::string>& keys, std::vector<std::string>& vals)
{
    for (auto& [k, v] : doc.items()) {
        const std::string name = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object()) {
            flatten(v, name, keys, vals);
        } else {
            keys.push_back(name);
            vals.push_back(csv_cell(v));
        }
    }
}

std::string render(const json& doc, const std::string& format)
{
    if (format == "json") return doc.dump(2) + "\n";
    std::vector<std::string> keys, vals;
    flatten(doc, "", keys, vals);
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + keys[i];
    out += "\n";
    for (std::size_t i = 0; i < vals.size(); ++i) out += (i ? "," : "") + vals[i];
    return out + "\n";
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("IoError", "cannot write '" + path + "'");
    f << text;
    if (!f) throw UsageError("IoError", "failed writing '" + path + "'");
}

json error_doc(const std::string& code, const std::string& message)
{
    json e = json::object();
    e["schema"] = kSchema;
    e["error"] = code;
    e["message"] = message;
    return e;
}

// ---------------------------------------------------------------- commands

bool is_uniform(const Input& in, const ProbVec& q)
{
    if (in.is_keyword("q", "uniform")) return true;
    return std::all_of(q.entries().begin(), q.entries().end(), [&](double x) { return x == q[0]; });
}

void cmd_clip(Input& in, const Emitter& em, json& doc)
{
    in.set_default("q", "uniform");
    const ProbVec p = in.vec("p");
    const ProbVec q = in.vec("q");
    const double eps = in.num("eps");
    if (q.dim() != p.dim()) throw Error(Errc::DimensionMismatch, "clip: p and q differ in dimension");
    if (is_uniform(in, q)) {
        const auto [sorted, perm] = sort_desc(p);
        const Flattest f = flattest(sorted, eps);
        std::vector<double> out(p.dim());
        for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = f.vec[i];
        doc["clipped"] = em.vec(out);
        doc["a"] = em.num(f.params.a);
        doc["b"] = em.num(f.params.b);
        doc["k"] = f.params.k;
        doc["m"] = f.params.m;
        doc["degenerate"] = f.degenerate;
        return;
    }
    const RelativeClip c = relative_clip(p, q, eps);
    doc["clipped"] = em.vec(c.vec.span());
    doc["a"] = em.num(c.a.value());
    doc["b"] = em.num(c.b.value());
    doc["k"] = c.k;
    doc["m"] = c.m;
    doc["degenerate"] = c.degenerate;
    doc["boundary"] = c.boundary;
}

void cmd_divergence(Input& in, const Emitter& em, json& doc)
{
    in.set_default("kind", "renyi");
    in.set_default("q", "uniform");
    const std::string kind = in.text("kind");
    const ProbVec p = in.vec("p");
    const ProbVec q = in.vec("q");
    if (kind == "renyi")
        doc["value"] = em.bits(renyi(p, q, in.order("alpha")));
    else if (kind == "hypothesis")
        doc["value"] = em.bits(hypothesis_testing(p, q, in.num("eps")));
    else if (kind == "reduce") {
        in.set_default("max_den", 1000000);
        const RationalRef ref = rational_approx(q, in.need("max_den").get<std::uint64_t>());
        doc["numerators"] = ref.num;
        doc["denominator"] = ref.den;
        doc["reduced"] = em.vec(rational_reduce(p, ref).span());
    } else
        throw UsageError("ParseError", "unknown divergence kind '" + kind + "' (renyi, hypothesis, reduce)");
}

void cmd_smooth(Input& in, const Emitter& em, json& doc)
{
    in.set_default("q", "uniform");
    in.set_default("sub", false);
    const ProbVec p = in.vec("p");
    const ProbVec q = in.vec("q");
    const double eps = in.num("eps");
    const RenyiOrder alpha = in.order("alpha");
    if (in.flag("sub")) {
        if (q.dim() != p.dim() || !is_uniform(in, q))
            throw Error(Errc::InvalidArgument, "smooth --sub is defined against the uniform reference only");
        doc["value"] = em.bits(smoothed_renyi_sub(p, eps, alpha));
        return;
    }
    doc["value"] = em.bits(smoothed_renyi(p, q, eps, alpha));
    doc["smoothed"] = em.vec(relative_flattest(p, q, eps).span());
}

void cmd_bound(Input& in, const Emitter& em, json& doc)
{
    static const std::vector<std::string> names{"mu", "nu", "mu_H", "nu_H", "mu_sub", "kappa"};
    const std::string name = in.text("name");
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw UsageError("ParseError", "unknown bound '" + name + "'");
    BoundQuery q{in.num("eps"), in.order("alpha")};
    const bool two_orders = name == "mu" || name == "nu" || name == "mu_sub";
    if (two_orders) q.beta = in.order("beta");
    const BoundValue v = bound_by_name(name, q);
    doc["value"] = em.bits(v.value);
    doc["branch"] = branch_name(v.branch);
}

void cmd_family(Input& in, const Emitter& em, json& doc)
{
    const std::string name = in.text("name");
    ProbVec v = ProbVec::uniform(1);
    if (name == "thm3")
        v = family_thm3(in.count("d"), in.num("eps"));
    else if (name == "thm4")
        v = family_thm4(in.count("d"), in.num("eps"), in.num("alpha"));
    else if (name == "three_block")
        v = family_three_block(in.count("d"), in.num("eps"), in.count("k"), in.count("m"), in.num("a"), in.num("b"),
                               in.num("c"));
    else if (name == "steepest_uniform")
        v = family_steepest_uniform(in.count("d"), in.num("eps"));
    else if (name == "unbounded")
        v = family_unbounded(in.count("d"), in.order("alpha"), in.order("beta"));
    else if (name == "representative_min")
        v = representative_min(in.vec("p"), in.num("eps"));
    else if (name == "representative_max")
        v = representative_max(in.vec("p"), in.num("eps"));
    else if (name == "app_e")
        v = family_app_e(in.count("d"), in.num("eps"), in.num("t"), in.num("s"), in.count("ell"));
    else
        throw UsageError("ParseError", "unknown family '" + name + "'");
    doc["vector"] = em.vec(v.span());
}

double abs_gap(ExtReal x, double y)
{
    if (!x.is_finite() && !std::isfinite(y)) return x.value() == y ? 0.0 : kInf;
    return std::abs(x.value() - y);
}

void cmd_verify(Input& in, const Emitter& em, json& doc)
{
    const std::string suite = in.text("name");
    in.set_default("seed", 1);
    const std::uint64_t seed = in.need("seed").get<std::uint64_t>();
    const std::size_t defaults = suite == "dh" || suite == "edge" ? 1000 : 100;
    in.set_default("instances", defaults);
    const std::size_t n = in.count("instances");
    double max_dev = 0.0;
    std::size_t failures = 0;
    static const double eps_grid[] = {0.05, 0.1, 0.3, 0.6};
    static const double orders[] = {0.5, 1.0, 2.0, kInf};

    if (suite == "oracle") {
        for (std::size_t i = 0; i < n; ++i) {
            Rng rng = Rng::for_instance(seed, i);
            const std::size_t d = 2 + rng.index(3);
            const double eps = eps_grid[rng.index(4)];
            const RenyiOrder a(orders[rng.index(4)]);
            const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[i % 3]);
            const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(i + 1) % 3]);
            const double dev = abs_gap(smoothed_renyi(p, q, eps, a), smooth_oracle(renyi_fn(a), p, q, eps).value);
            max_dev = std::max(max_dev, dev);
            failures += dev > 1e-4;
        }
    } else if (suite == "dh") {
        for (std::size_t i = 0; i < n; ++i) {
            Rng rng = Rng::for_instance(seed, i);
            const std::size_t d = 2 + rng.index(9);
            const double eps = 0.01 + 0.98 * rng.uniform();
            const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[i % 3]);
            const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(i + 1) % 3]);
            const double dev = abs_gap(hypothesis_testing(p, q, eps), dh_oracle(p, q, eps));
            max_dev = std::max(max_dev, dev);
            failures += dev > 1e-10;
        }
    } else if (suite == "relmaj") {
        for (std::size_t i = 0; i < n; ++i) {
            Rng rng = Rng::for_instance(seed, i);
            const std::size_t d = 2 + rng.index(5);
            const double eps = eps_grid[rng.index(4)];
            const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[i % 3]);
            const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(i + 1) % 3]);
            const ProbVec pe = relative_flattest(p, q, eps);
            for (int s = 0; s < 100; ++s)
                failures += !relatively_majorizes(sample_tv_ball(p, eps, rng), q, pe, q);
        }
    } else if (suite == "identities") {
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                const double eps = (i + 0.5) / 10.0;
                const double a_hi = 1.1 + 0.4 * j, a_2 = 1.05 + 0.09 * j;
                const BoundQuery qi{eps, RenyiOrder(a_hi), RenyiOrder::infinity()};
                const BoundQuery q2{eps, RenyiOrder(a_2), RenyiOrder(2.0)};
                max_dev = std::max({max_dev, std::abs(mu(qi).value.value() - mu_beta_inf_identity(eps, a_hi)),
                                    std::abs(mu_sub(qi).value.value() - mu_sub_beta_inf_identity(eps, a_hi)),
                                    std::abs(mu_sub(q2).value.value() - mu_sub_beta2_identity(eps, a_2))});
            }
        }
        failures = max_dev > 1e-12;
    } else if (suite == "monotonicity") {
        failures = !monotonicity_scans(seed);
    } else if (suite == "edge") {
        Rng rng(seed);
        auto draw = [&] { return std::exp2(rng.uniform(-4.0, 4.0)); };
        for (std::size_t i = 0; i < n; ++i) {
            const double A = draw(), B = draw(), C = draw(), D = draw();
            const bool high = i % 2 == 0;
            failures += !edge_lemma_scan(A, B, C, D, high ? 1.5 : 0.3, high ? 3.0 : 0.7, 10000);
        }
    } else {
        throw UsageError("ParseError", "unknown suite '" + suite + "' (oracle, dh, relmaj, identities, monotonicity, edge)");
    }
    doc["suite"] = suite;
    doc["passed"] = failures == 0;
    doc["failures"] = failures;
    if (suite == "oracle" || suite == "dh" || suite == "identities") doc["max_deviation"] = em.bits(max_dev);
}

std::vector<double> json_grid(const json& v, const std::string& key)
{
    if (!v.is_array()) throw UsageError("ParseError", "'" + key + "' must be an array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (e.is_number())
            out.push_back(e.get<double>());
        else if (e.is_string())
            out.push_back(parse_number(e.get<std::string>(), key));
        else
            throw UsageError("ParseError", "'" + key + "' entries must be numbers or \"inf\"");
    }
    return out;
}

std::vector<std::size_t> json_dims(const json& v, const std::string& key)
{
    if (!v.is_array()) throw UsageError("ParseError", "'" + key + "' must be an array");
    std::vector<std::size_t> out;
    for (const auto& e : v) {
        const bool integral = e.is_number() && e.get<double>() >= 0.0 && std::floor(e.get<double>()) == e.get<double>();
        if (!integral) throw UsageError("ParseError", "'" + key + "' entries must be non-negative integers");
        out.push_back(static_cast<std::size_t>(e.get<double>()));
    }
    return out;
}

json grid_json(const std::vector<double>& g)
{
    json arr = json::array();
    for (double v : g) arr.push_back(number_json(v));
    return arr;
}

const std::vector<std::string> kSweepKeys{"seed",     "instances",   "dims",  "eps_grid",    "alpha_grid", "beta_grid",
                                          "oracle_tol", "slack", "family_dims", "threads"};

/// Applies a SweepConfig mirror object onto cfg.
void apply_sweep_json(const json& j, SweepConfig& cfg, bool allow_cli_keys)
{
    for (auto& [k, v] : j.items()) {
        if (k == "seed") cfg.seed = v.get<std::uint64_t>();
        else if (k == "instances") cfg.instances = v.get<std::size_t>();
        else if (k == "dims") cfg.dims = json_dims(v, k);
        else if (k == "family_dims") cfg.family_dims = json_dims(v, k);
        else if (k == "eps_grid") cfg.eps_grid = json_grid(v, k);
        else if (k == "alpha_grid") cfg.alpha_grid = json_grid(v, k);
        else if (k == "beta_grid") cfg.beta_grid = json_grid(v, k);
        else if (k == "oracle_tol") cfg.oracle_tol = v.get<double>();
        else if (k == "slack") cfg.slack = v.get<double>();
        else if (k == "threads") cfg.threads = v.get<std::size_t>();
        else if (!(allow_cli_keys && (k == "out_dir" || k == "config" || k == "log_base")))
            throw UsageError("ParseError", "unknown sweep config key '" + k + "'");
    }
}

json sweep_config_json(const SweepConfig& cfg)
{
    json j = json::object();
    j["seed"] = cfg.seed;
    j["instances"] = cfg.instances;
    j["dims"] = cfg.dims;
    j["eps_grid"] = grid_json(cfg.eps_grid);
    j["alpha_grid"] = grid_json(cfg.alpha_grid);
    j["beta_grid"] = grid_json(cfg.beta_grid);
    j["oracle_tol"] = cfg.oracle_tol;
    j["slack"] = cfg.slack;
    j["family_dims"] = cfg.family_dims;
    return j;
}

json csv_number_json(double v)
{
    const std::string s = format_csv_number(v);
    if (s == "INF") return "inf";
    if (s == "-INF") return "-inf";
    return std::strtod(s.c_str(), nullptr);
}

json gaps_json(const SweepReport& r, const Emitter& em)
{
    json arr = json::array();
    for (const auto& g : r.achievability_gaps) {
        json o = json::object();
        o["bound"] = g.bound;
        o["d"] = g.d;
        o["eps"] = em.num(g.eps);
        o["alpha"] = em.num(g.alpha);
        o["family_value"] = em.bits(g.family_value);
        o["bound_value"] = em.bits(g.bound_value);
        o["gap"] = em.bits(g.gap);
        arr.push_back(o);
    }
    return arr;
}

json records_json(const SweepReport& r)
{
    json arr = json::array();
    for (const auto& x : r.records) {
        json o = json::object();
        o["instance"] = x.instance;
        o["theorem"] = x.theorem;
        o["d"] = x.d;
        o["eps"] = csv_number_json(x.eps);
        o["alpha"] = csv_number_json(x.alpha);
        o["beta"] = csv_number_json(x.beta);
        o["lhs"] = csv_number_json(x.lhs.value());
        o["rhs"] = csv_number_json(x.rhs.value());
        o["margin"] = csv_number_json(x.margin);
        arr.push_back(o);
    }
    return arr;
}

void cmd_sweep(Input& in, const Emitter& em, json& doc)
{
    SweepConfig cfg;
    if (in.has("config")) apply_sweep_json(read_json_file(in.text("config")), cfg, false);
    json overrides = json::object();
    for (const auto& k : kSweepKeys)
        if (in.has(k)) overrides[k] = in.raw()[k];
    apply_sweep_json(overrides, cfg, false);

    json echo = sweep_config_json(cfg);
    if (in.has("out_dir")) echo["out_dir"] = in.text("out_dir");
    if (in.has("log_base")) echo["log_base"] = in.text("log_base");
    doc["input"] = echo;

    const SweepReport report = sweep_bounds(cfg);
    std::size_t violations = 0;
    for (const auto& r : report.records) violations += r.margin > cfg.slack;
    doc["records"] = report.records.size();
    doc["violations"] = violations;
    doc["max_violation"] = em.bits(report.max_violation);
    doc["achievability_gaps"] = gaps_json(report, em);

    if (in.has("out_dir")) {
        const std::filesystem::path dir = in.text("out_dir");
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw UsageError("IoError", "cannot create '" + dir.string() + "'");
        std::ostringstream csv, gaps;
        write_report_csv(report, csv);
        write_gaps_csv(report, gaps);
        write_text((dir / "report.csv").string(), csv.str());
        write_text((dir / "gaps.csv").string(), gaps.str());
        json full = json::object();
        full["schema"] = kSchema;
        full["records"] = records_json(report);
        write_text((dir / "report.json").string(), full.dump(2) + "\n");
        write_text((dir / "summary.json").string(), doc.dump(2) + "\n");
    }
}

// ---------------------------------------------------------------- wiring

Field vec_field(const char* key, const char* help) { return Field{key, Kind::Vec, help}; }
Field num_field(const char* key, const char* help) { return Field{key, Kind::Num, help}; }
Field count_field(const char* key, const char* help) { return Field{key, Kind::Count, help}; }
Field text_field(const char* key, const char* help) { return Field{key, Kind::Text, help}; }

std::vector<Command> make_commands()
{
    const Field p = vec_field("p", "first vector: comma-separated values, 'uniform' or 'e1'");
    const Field q = vec_field("q", "reference vector (default uniform)");
    const Field dim = count_field("dim", "dimension for keyword vectors");
    const Field eps = num_field("eps", "smoothing radius");
    const Field alpha = num_field("alpha", "Renyi order (number or inf)");
    const Field beta = num_field("beta", "second Renyi order (number or inf)");
    const Field base = text_field("log_base", "output units: 2 (bits) or e (nats)");
    const Field name = text_field("name", "");
    const Field sub("sub", Kind::Flag, "subnormalized smoothing against the uniform reference");
    Field threads = count_field("threads", "worker threads (default DIVSMOOTH_THREADS or all cores)");
    threads.echo = false;
    Field config = text_field("config", "SweepConfig JSON file");
    config.echo = false;

    std::vector<Command> cmds;
    cmds.emplace_back("clip", std::vector<Field>{p, q, dim, eps, base});
    cmds.emplace_back("divergence",
                      std::vector<Field>{text_field("kind", "renyi (default), hypothesis or reduce"), p, q, dim, alpha, eps,
                                         count_field("max_den", "largest denominator for reduce (default 1e6)"), base});
    cmds.emplace_back("smooth", std::vector<Field>{p, q, dim, eps, alpha, sub, base});
    cmds.emplace_back("bound", std::vector<Field>{name, eps, alpha, beta, base});
    cmds.emplace_back("family",
                      std::vector<Field>{name, count_field("d", "dimension"), eps, alpha, beta,
                                         count_field("k", "top block size"),
                                         count_field("m", "top plus middle block size"), num_field("a", "top level"),
                                         num_field("b", "bottom level"), num_field("c", "middle level"),
                                         num_field("t", "t parameter"), num_field("s", "s parameter"),
                                         count_field("ell", "ell parameter"), p, dim, base});
    cmds.emplace_back("verify", std::vector<Field>{name, count_field("instances", "number of seeded instances"),
                                                   count_field("seed", "seed"), base});
    cmds.emplace_back(
        "sweep",
        std::vector<Field>{config, text_field("out_dir", "directory for report.csv, gaps.csv, report.json, summary.json"),
                           count_field("seed", "seed override"), count_field("instances", "instance count override"),
                           vec_field("dims", "dimensions to sample"), vec_field("eps_grid", "eps values"),
                           vec_field("alpha_grid", "alpha values"), vec_field("beta_grid", "beta values"),
                           num_field("oracle_tol", "oracle tolerance"), num_field("slack", "violation slack"),
                           vec_field("family_dims", "dimensions for achievability families"), threads, base});
    return cmds;
}

std::string flag_name(const std::string& key)
{
    std::string f = "--" + key;
    std::replace(f.begin(), f.end(), '_', '-');
    return f;
}

const char* errc_of(const std::exception& e)
{
    if (const auto* u = dynamic_cast<const UsageError*>(&e)) return u->kind().c_str();
    return "ParseError";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"divsmooth: smoothed divergences, clipping and universal bounds"};
    app.name("divsmooth");
    app.require_subcommand(1);
    std::vector<Command> cmds = make_commands();
    static const std::map<std::string, std::string> descriptions{
        {"clip", "flattest eps-approximation (clipped vector)"},
        {"divergence", "Renyi or hypothesis-testing divergence"},
        {"smooth", "smoothed Renyi divergence"},
        {"bound", "closed-form bound: mu, nu, mu_H, nu_H, mu_sub, kappa"},
        {"family", "extremal family vectors"},
        {"verify", "oracle and property suites"},
        {"sweep", "bound-validity sweep and achievability gaps"}};

    for (Command& c : cmds) {
        c.app = app.add_subcommand(c.name, descriptions.at(c.name));
        for (Field& f : c.fields) {
            if (f.key == "name") {
                c.app->add_option("name", f.text, "name of the " + c.name + " item");
            } else if (f.kind == Kind::Flag) {
                c.app->add_flag(flag_name(f.key), f.flag, f.help);
            } else {
                c.app->add_option(flag_name(f.key), f.text, f.help);
            }
        }
        c.app->add_option("--input", c.input_path, "JSON file: {\"p\":[...],\"q\":[...]} or an emitted document");
        c.app->add_option("--output", c.output_path, "write the document to this path instead of stdout");
        c.app->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    }

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* shown = &app;
        for (const Command& c : cmds)
            if (c.app->parsed()) shown = c.app;
        out << shown->help();
        return 0;
    } catch (const CLI::ParseError& e) {
        out << error_doc("ParseError", e.what()).dump() << "\n";
        return 1;
    }

    Command* cmd = nullptr;
    for (Command& c : cmds)
        if (c.app->parsed()) cmd = &c;

    try {
        Input in(resolve_input(*cmd));
        in.set_default("log_base", "2");
        const std::string base = in.text("log_base");
        if (base != "2" && base != "e") throw UsageError("ParseError", "log_base must be 2 or e");
        const Emitter em(base == "e" ? std::log(2.0) : 1.0);

        json doc = json::object();
        doc["schema"] = kSchema;
        doc["command"] = cmd->name;
        doc["input"] = json::object();
        if (cmd->name == "clip") cmd_clip(in, em, doc);
        else if (cmd->name == "divergence") cmd_divergence(in, em, doc);
        else if (cmd->name == "smooth") cmd_smooth(in, em, doc);
        else if (cmd->name == "bound") cmd_bound(in, em, doc);
        else if (cmd->name == "family") cmd_family(in, em, doc);
        else if (cmd->name == "verify") cmd_verify(in, em, doc);
        else cmd_sweep(in, em, doc);
        if (cmd->name != "sweep") doc["input"] = in.echo(*cmd);

        const std::string text = render(doc, cmd->format);
        if (cmd->output_path.empty())
            out << text;
        else
            write_text(cmd->output_path, text);
        return 0;
    } catch (const Error& e) {
        out << error_doc(errc_name(e.code()), e.what()).dump() << "\n";
        return 2;
    } catch (const UsageError& e) {
        out << error_doc(e.kind(), e.what()).dump() << "\n";
        return 1;
    } catch (const json::exception& e) {
        out << error_doc("ParseError", e.what()).dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "divsmooth: " << e.what() << "\n";
        out << error_doc(errc_of(e), e.what()).dump() << "\n";
        return 1;
    }
}

}  // namespace divsmooth::cli
