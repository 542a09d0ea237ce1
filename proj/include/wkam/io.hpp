#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "instance.hpp"

namespace wkam {

using AnyInstance = std::variant<CostInstance<Rational>, CostInstance<double>>;

namespace io {

using Json = nlohmann::ordered_json;

/// Exact values as "p/q" strings, floats as JSON numbers, +inf as "inf".
template <Scalar T>
Json encode(const Extended<T>& v) {
    if (v.is_infinite()) return "inf";
    if constexpr (is_exact_v<T>) return ScalarTraits<T>::to_string(v.value());
    else return v.value();
}

template <Scalar T>
Extended<T> decode(const Json& j, bool allow_infinite, const char* field) {
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s == "inf" || s == "+inf" || s == "infinity") {
            if (!allow_infinite) throw InputError(std::string(field) + ": +inf is not allowed here");
            return Extended<T>::infinity();
        }
        if (s == "nan" || s == "NaN" || s == "-inf") throw InputError(std::string(field) + ": invalid value '" + s + "'");
        return Extended<T>(ScalarTraits<T>::parse(s));
    }
    if (j.is_number_integer()) return Extended<T>(ScalarTraits<T>::parse(j.dump()));
    if (j.is_number_float()) {
        // The shortest round-trip text keeps decimal inputs such as 0.1 exact.
        if constexpr (is_exact_v<T>) return Extended<T>(ScalarTraits<T>::parse(j.dump()));
        else return Extended<T>(ScalarTraits<T>::from_double(j.get<double>()));
    }
    throw InputError(std::string(field) + ": expected a number or a numeric string");
}

template <Scalar T>
SquareMatrix<Extended<T>> decode_matrix(const Json& j, std::size_t n, bool allow_infinite, const char* field) {
    if (!j.is_array() || j.size() != n) throw InputError(std::string(field) + ": expected " + std::to_string(n) + " rows");
    SquareMatrix<Extended<T>> out(n);
    for (Index r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != n)
            throw InputError(std::string(field) + ": row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
        for (Index c = 0; c < n; ++c) out(r, c) = decode<T>(j[r][c], allow_infinite, field);
    }
    return out;
}

template <Scalar T>
Json encode_matrix(const SquareMatrix<Extended<T>>& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.size(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.size(); ++c) row.push_back(encode(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <Scalar T>
Json encode_matrix(const SquareMatrix<T>& m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.size(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.size(); ++c) row.push_back(encode(Extended<T>(m(r, c))));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::size_t dimension_of(const Json& doc) {
    if (!doc.is_object()) throw InputError("instance file must contain a JSON object");
    if (!doc.contains("cost")) throw InputError("instance file has no 'cost' matrix");
    const auto& cost = doc["cost"];
    if (!cost.is_array() || cost.empty()) throw InputError("'cost' must be a non-empty array of rows");
    if (doc.contains("n")) {
        if (!doc["n"].is_number_unsigned()) throw InputError("'n' must be a positive integer");
        if (doc["n"].get<std::size_t>() != cost.size()) throw InputError("'n' does not match the number of cost rows");
    }
    return cost.size();
}

inline std::string mode_of(const Json& doc) {
    const std::string mode = doc.value("mode", std::string("exact"));
    if (mode != "exact" && mode != "float") throw InputError("'mode' must be \"exact\" or \"float\"");
    return mode;
}

template <Scalar T>
CostInstance<T> instance_from_json(const Json& doc) {
    const std::size_t n = dimension_of(doc);
    CostInstance<T> inst;
    inst.cost = decode_matrix<T>(doc["cost"], n, true, "cost");
    if (doc.contains("labels")) {
        const auto& labels = doc["labels"];
        if (!labels.is_array() || labels.size() != n) throw InputError("'labels' must list one name per point");
        for (const auto& l : labels) {
            if (!l.is_string()) throw InputError("'labels' entries must be strings");
            inst.labels.push_back(l.get<std::string>());
        }
    } else {
        inst.labels = CostInstance<T>::default_labels(n);
    }
    if (doc.contains("metric")) {
        const auto m = decode_matrix<T>(doc["metric"], n, false, "metric");
        SquareMatrix<T> metric(n);
        for (Index r = 0; r < n; ++r)
            for (Index c = 0; c < n; ++c) metric(r, c) = m(r, c).value();
        inst.metric = std::move(metric);
    }
    if (doc.contains("tolerance")) {
        if (!doc["tolerance"].is_number()) throw InputError("'tolerance' must be a number");
        inst.tolerance = doc["tolerance"].get<double>();
    }
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    return inst;
}

/// Optional externally supplied barrier table stored under "barrier".
template <Scalar T>
std::optional<SquareMatrix<Extended<T>>> claimed_barrier_from_json(const Json& doc) {
    if (!doc.contains("barrier")) return std::nullopt;
    return decode_matrix<T>(doc["barrier"], dimension_of(doc), true, "barrier");
}

inline AnyInstance any_from_json(const Json& doc) {
    if (mode_of(doc) == "exact") return instance_from_json<Rational>(doc);
    return instance_from_json<double>(doc);
}

template <Scalar T>
Json to_json(const CostInstance<T>& inst) {
    Json doc;
    doc["n"] = inst.size();
    doc["labels"] = inst.labels;
    doc["mode"] = ScalarTraits<T>::mode_name;
    if constexpr (!is_exact_v<T>) doc["tolerance"] = inst.tolerance;
    doc["cost"] = encode_matrix(inst.cost);
    if (inst.metric) doc["metric"] = encode_matrix(*inst.metric);
    return doc;
}

inline Json read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
}

}  // namespace io

/// Reads an instance file; the "mode" field selects the numeric type.
inline AnyInstance load(const std::string& path) { return io::any_from_json(io::read_document(path)); }

template <Scalar T>
CostInstance<T> load_as(const std::string& path) {
    return io::instance_from_json<T>(io::read_document(path));
}

template <Scalar T>
std::string dump(const CostInstance<T>& inst) {
    return io::to_json(inst).dump(2) + "\n";
}

template <Scalar T>
void save(const CostInstance<T>& inst, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << dump(inst);
}

}  // namespace wkam
