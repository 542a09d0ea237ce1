// wkam: command-line front end for the weak KAM toolkit on finite cost instances.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <wkam/wkam.hpp>

namespace {

using namespace wkam;
using Json = io::Json;

enum Exit { kOk = 0, kInternal = 1, kInput = 2, kVerification = 3 };

struct RunConfig {
    std::string command;
    std::string in_path;
    std::string gen_spec;
    std::string out_path;
    std::string format = "json";
    std::string mode;
    double tol = 0;
    std::uint64_t seed = 1;
    std::size_t horizon = 6;
    bool check = false;
};

std::vector<std::string> split(const std::string& s, char sep, std::size_t max_parts) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (out.size() + 1 < max_parts) {
        const auto pos = s.find(sep, start);
        if (pos == std::string::npos) break;
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    out.push_back(s.substr(start));
    return out;
}

long parse_long(const std::string& s, const char* what) {
    const Rational v = wkam::detail::parse_rational(s);
    if (v.get_den() != 1 || !v.get_num().fits_slong_p()) throw InputError(std::string(what) + " must be an integer: " + s);
    return v.get_num().get_si();
}

std::size_t parse_size(const std::string& s, const char* what) {
    const long v = parse_long(s, what);
    if (v < 1) throw InputError(std::string(what) + " must be positive: " + s);
    return static_cast<std::size_t>(v);
}

template <Scalar T>
CostInstance<T> generate(const std::string& spec) {
    const auto kind = split(spec, ':', 2);
    if (kind[0] == "constant") {
        const auto p = split(spec, ':', 3);
        if (p.size() != 3) throw InputError("generator spec: constant:n:k");
        return gen_constant<T>(parse_size(p[1], "n"), ScalarTraits<T>::parse(p[2]));
    }
    if (kind[0] == "random") {
        const auto p = split(spec, ':', 5);
        if (p.size() != 5) throw InputError("generator spec: random:n:seed:lo:hi");
        const long lo = parse_long(p[3], "lo"), hi = parse_long(p[4], "hi");
        if (lo > hi) throw InputError("generator spec: lo must not exceed hi");
        return gen_random<T>(parse_size(p[1], "n"), static_cast<std::uint64_t>(parse_long(p[2], "seed")), lo, hi);
    }
    if (kind[0] == "fk") {
        const auto p = split(spec, ':', 4);
        if (p.size() != 4) throw InputError("generator spec: fk:m:lambda:potential");
        const std::size_t m = parse_size(p[1], "m");
        const T lambda = ScalarTraits<T>::parse(p[2]);
        if (lambda < T(0)) throw InputError("fk: lambda must be nonnegative");
        const auto v = fk_potential<T>(m, p[3]);
        for (const auto& x : v)
            if (x < T(0)) throw InputError("fk: potential values must be nonnegative");
        return gen_fk<T>(m, lambda, v);
    }
    throw InputError("unknown generator '" + kind[0] + "'");
}

// Output ------------------------------------------------------------------------

template <Scalar T>
Json labels_of(const CostInstance<T>& inst, const std::vector<Index>& pts) {
    Json out = Json::array();
    for (Index p : pts) out.push_back(inst.labels[p]);
    return out;
}

template <Scalar T>
Json function_json(const CostInstance<T>& inst, const ValueFunction<T>& u) {
    Json out = Json::object();
    for (Index x = 0; x < inst.size(); ++x) out[inst.labels[x]] = io::encode(u[x]);
    return out;
}

template <Scalar T>
Json pairs_json(const CostInstance<T>& inst, const std::set<std::pair<Index, Index>>& pairs) {
    Json out = Json::array();
    for (auto [x, y] : pairs) out.push_back(Json::array({inst.labels[x], inst.labels[y]}));
    return out;
}

std::string csv_cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    return v.dump();
}

/// Long-format CSV: one line per scalar leaf, keyed by table, row and column.
void flatten(const Json& v, const std::string& table, const std::string& row, const std::string& col,
             std::vector<std::string>& lines, const std::vector<std::string>& labels) {
    auto key = [&](std::size_t i) { return i < labels.size() ? labels[i] : std::to_string(i); };
    if (v.is_array() && !v.empty() && v[0].is_array()) {
        for (std::size_t r = 0; r < v.size(); ++r)
            for (std::size_t c = 0; c < v[r].size(); ++c) lines.push_back(table + "," + key(r) + "," + key(c) + "," + csv_cell(v[r][c]));
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) lines.push_back(table + "," + std::to_string(i) + ",," + csv_cell(v[i]));
    } else if (v.is_object()) {
        for (const auto& [k, item] : v.items()) {
            if (item.is_structured()) flatten(item, table + "." + k, row, col, lines, labels);
            else lines.push_back(table + "," + k + ",," + csv_cell(item));
        }
    } else {
        lines.push_back(table + "," + row + "," + col + "," + csv_cell(v));
    }
}

std::string render(const Json& doc, const std::string& format, const std::vector<std::string>& labels) {
    if (format == "json") return doc.dump(2) + "\n";
    std::vector<std::string> lines{"table,row,column,value"};
    for (const auto& [k, v] : doc.items()) flatten(v, k, "", "", lines, labels);
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + cfg.out_path + "'");
    out << text;
}

// Commands ----------------------------------------------------------------------

template <Scalar T>
int cmd_critical(const RunConfig& cfg, const CostInstance<T>& inst) {
    const auto crit = critical_value(inst);
    Json doc;
    doc["alpha0"] = io::encode(Extended<T>(crit.alpha0));
    doc["witness_cycle"] = labels_of(inst, crit.witness_cycle);
    doc["reduced"] = io::encode_matrix(crit.reduced);
    emit(cfg, render(doc, cfg.format, inst.labels));
    return kOk;
}

template <Scalar T>
int cmd_potential(const RunConfig& cfg, const CostInstance<T>& inst) {
    const auto a = analyze(inst);
    Json doc;
    doc["alpha0"] = io::encode(Extended<T>(a.crit.alpha0));
    doc["phi"] = io::encode_matrix(a.phi.entries);
    doc["phi1"] = io::encode_matrix(a.phi1.entries);
    doc["F"] = function_json(inst, a.F);
    doc["f"] = function_json(inst, a.f);
    emit(cfg, render(doc, cfg.format, inst.labels));
    return kOk;
}

template <Scalar T>
int cmd_barrier(const RunConfig& cfg, const CostInstance<T>& inst) {
    const auto a = analyze(inst);
    Json doc;
    doc["alpha0"] = io::encode(Extended<T>(a.crit.alpha0));
    doc["h"] = io::encode_matrix(a.bar.h.entries);
    doc["iterations_to_fix"] = a.bar.iterations_to_fix;
    Json neg = Json::object(), pos = Json::object();
    for (Index x = 0; x < inst.size(); ++x) {
        neg[inst.labels[x]] = function_json(inst, weak_kam_neg(a.bar, x));
        pos[inst.labels[x]] = function_json(inst, weak_kam_pos(a.bar, x));
    }
    doc["negative_solutions"] = std::move(neg);
    doc["positive_solutions"] = std::move(pos);
    emit(cfg, render(doc, cfg.format, inst.labels));
    return kOk;
}

template <Scalar T>
int cmd_aubry(const RunConfig& cfg, const CostInstance<T>& inst) {
    const auto a = analyze(inst);
    Json doc;
    doc["alpha0"] = io::encode(Extended<T>(a.crit.alpha0));
    doc["vertices"] = labels_of(inst, a.aubry.sets.vertices);
    doc["edges"] = pairs_json(inst, a.aubry.sets.edges);
    doc["F"] = function_json(inst, a.F);
    emit(cfg, render(doc, cfg.format, inst.labels));
    return kOk;
}

template <Scalar T>
int cmd_subsolution(const RunConfig& cfg, const CostInstance<T>& inst) {
    const auto a = analyze(inst);
    const auto sub = solve_subsolution(inst, a.crit.alpha0);
    const auto strict = max_strict_subsolution(inst, a.crit);
    const auto pairs = strict_pairs(inst, a.crit, strict);
    Json doc;
    doc["alpha0"] = io::encode(Extended<T>(a.crit.alpha0));
    doc["subsolution"] = function_json(inst, *sub.solution);
    doc["strict_subsolution"] = function_json(inst, strict);
    doc["strict_pairs"] = pairs_json(inst, pairs);
    int code = kOk;
    if (cfg.check) {
        std::set<std::pair<Index, Index>> expected;
        for (Index x = 0; x < inst.size(); ++x)
            for (Index y = 0; y < inst.size(); ++y)
                if (!a.aubry.sets.edges.contains({x, y})) expected.insert({x, y});
        const bool dominated = static_cast<bool>(is_dominated(inst, strict, a.crit.alpha0));
        const bool ok = dominated && pairs == expected;
        doc["check"] = Json{{"dominated", dominated}, {"strict_off_edge_aubry_set", pairs == expected}, {"ok", ok}};
        if (!ok) code = kVerification;
    }
    emit(cfg, render(doc, cfg.format, inst.labels));
    return code;
}

template <Scalar T>
int cmd_verify(const RunConfig& cfg, const CostInstance<T>& inst, const std::optional<SquareMatrix<Extended<T>>>& claimed) {
    oracle::guard(inst.size(), oracle::kMaxCyclePoints, "verify");
    oracle::VerifyOptions opts;
    opts.seed = cfg.seed;
    opts.horizon = cfg.horizon;
    Analysis<T> a = analyze(inst);
    if (claimed) a = with_barrier(inst, std::move(a), *claimed);
    const auto rep = oracle::verify(inst, a, opts);
    Json doc;
    doc["n"] = rep.n;
    doc["mode"] = rep.mode;
    doc["alpha0"] = rep.alpha0;
    doc["barrier_source"] = claimed ? "instance" : "computed";
    doc["ok"] = rep.ok();
    Json checks = Json::array();
    for (const auto& c : rep.checks) checks.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
    doc["checks"] = std::move(checks);
    if (cfg.format == "csv") {
        std::string text = "check,pass,witness\n";
        for (const auto& c : rep.checks) {
            std::string w = c.witness;
            for (auto& ch : w)
                if (ch == '"') ch = '\'';
            text += c.name + "," + (c.pass ? "1" : "0") + ",\"" + w + "\"\n";
        }
        emit(cfg, text);
    } else {
        emit(cfg, doc.dump(2) + "\n");
    }
    for (const auto* f : rep.failures()) std::cerr << "FAIL " << f->name << ": " << f->witness << "\n";
    return rep.ok() ? kOk : kVerification;
}

template <Scalar T>
int cmd_plotdata(const RunConfig& cfg, const CostInstance<T>& inst) {
    if (!inst.metric) throw InputError("plotdata needs an instance with a metric (e.g. --gen fk:...)");
    const auto a = analyze(inst);
    const Index x0 = a.aubry.sets.vertices.empty() ? 0 : a.aubry.sets.vertices.front();
    auto cell = [](const Extended<T>& v) { return csv_cell(io::encode(v)); };
    std::string text = "point,V,F,f,h_xx,in_aubry,h_x0\n";
    for (Index x = 0; x < inst.size(); ++x) {
        text += inst.labels[x] + "," + cell(inst(x, x)) + "," + cell(a.F[x]) + "," + cell(a.f[x]) + "," + cell(a.bar.h(x, x)) + "," +
                (a.aubry.sets.contains(x) ? "1" : "0") + "," + cell(a.bar.h(x0, x)) + "\n";
    }
    emit(cfg, text);
    return kOk;
}

template <Scalar T>
int dispatch(const RunConfig& cfg) {
    CostInstance<T> inst;
    std::optional<SquareMatrix<Extended<T>>> claimed;
    if (!cfg.in_path.empty()) {
        const Json doc = io::read_document(cfg.in_path);
        io::mode_of(doc);
        inst = io::instance_from_json<T>(doc);
        claimed = io::claimed_barrier_from_json<T>(doc);
    } else {
        inst = generate<T>(cfg.gen_spec);
    }
    if (cfg.tol > 0) inst.tolerance = cfg.tol;
    if (cfg.command == "critical") return cmd_critical(cfg, inst);
    if (cfg.command == "potential") return cmd_potential(cfg, inst);
    if (cfg.command == "barrier") return cmd_barrier(cfg, inst);
    if (cfg.command == "aubry") return cmd_aubry(cfg, inst);
    if (cfg.command == "subsolution") return cmd_subsolution(cfg, inst);
    if (cfg.command == "verify") return cmd_verify(cfg, inst, claimed);
    if (cfg.command == "plotdata") return cmd_plotdata(cfg, inst);
    throw std::logic_error("unknown command");
}

std::string resolve_mode(const RunConfig& cfg) {
    if (!cfg.mode.empty()) return cfg.mode;
    if (!cfg.in_path.empty()) return io::mode_of(io::read_document(cfg.in_path));
    return "exact";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical values, Mane potentials, Peierls barriers and Aubry sets of finite cost instances"};
    app.require_subcommand(1);
    RunConfig cfg;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"critical", "critical value, witness cycle and reduced costs"},
        {"potential", "Mane potential, phi_1 and the jump functions F, f"},
        {"barrier", "Peierls barrier and the weak KAM solutions h_x, h^x"},
        {"aubry", "projected and edge Aubry sets"},
        {"subsolution", "a critical sub-solution and the maximal strict one"},
        {"verify", "run every invariant against the brute-force references"},
        {"plotdata", "per-point CSV for metric (Frenkel-Kontorova) instances"}};
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        auto* in = sub->add_option("--in", cfg.in_path, "instance JSON file");
        auto* gen = sub->add_option("--gen", cfg.gen_spec, "constant:n:k | random:n:seed:lo:hi | fk:m:lambda:potential");
        in->excludes(gen);
        sub->add_option("--out", cfg.out_path, "output file (default stdout)");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--mode", cfg.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
        sub->add_option("--tol", cfg.tol, "float-mode tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "seed for sampled sub-solutions");
        sub->add_option("--horizon", cfg.horizon, "N for the representation bound")->check(CLI::PositiveNumber);
        if (name == "subsolution") sub->add_flag("--check", cfg.check, "verify strictness off the edge Aubry set");
        sub->callback([&cfg, name = name] { cfg.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }
    try {
        if (cfg.in_path.empty() == cfg.gen_spec.empty()) throw InputError("give exactly one of --in or --gen");
        return resolve_mode(cfg) == "exact" ? dispatch<Rational>(cfg) : dispatch<double>(cfg);
    } catch (const oracle::GuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}
