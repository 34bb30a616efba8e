#ifndef SPECSEQ_IO_HPP
#define SPECSEQ_IO_HPP

#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <nlohmann/json.hpp>

#include "specseq/obstruction.hpp"

namespace specseq {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// The input grammar is strict: unknown keys are rejected, and scalars
/// must be in canonical form so that serialize ∘ parse is the identity on
/// documents this library emits. Rationals are JSON integers when they
/// fit in 64 bits, otherwise strings of canonical digits; fractions are
/// "a/b" with b ≥ 2, gcd(a,b) = 1, a ≠ 0. F_p entries are integers in [0,p).

inline void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw parse_error(where, "unknown field \"" + it.key() + "\"");
}

inline const json& require_key(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        throw parse_error(where, std::string("missing field \"") + key + "\"");
    return *it;
}

inline long long require_int(const json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw parse_error(where, "expected an integer");
    if (j.is_number_unsigned() &&
        j.get<std::uint64_t>() > static_cast<std::uint64_t>(
                                     std::numeric_limits<long long>::max()))
        throw parse_error(where, "integer out of range");
    return j.get<long long>();
}

inline bool canonical_digits(const std::string& s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return s.size() == 1 || s[0] != '0';
}

inline BigRational rational_from_string(const std::string& s, const std::string& where) {
    std::string body = s;
    bool negative = false;
    if (!body.empty() && body[0] == '-') {
        negative = true;
        body = body.substr(1);
    }
    const auto slash = body.find('/');
    const std::string num_digits = slash == std::string::npos ? body : body.substr(0, slash);
    if (!canonical_digits(num_digits))
        throw parse_error(where, "malformed numerator \"" + s + "\"");
    BigInt num(num_digits);
    if (negative)
        num = -num;
    if (slash == std::string::npos) {
        if (num >= std::numeric_limits<std::int64_t>::min() &&
            num <= std::numeric_limits<std::int64_t>::max())
            throw parse_error(where,
                              "\"" + s + "\" fits in 64 bits; canonical form is a JSON integer");
        return BigRational(num);
    }
    const std::string den_digits = body.substr(slash + 1);
    if (!canonical_digits(den_digits))
        throw parse_error(where, "malformed denominator \"" + s + "\"");
    BigInt den(den_digits);
    if (den < 2)
        throw parse_error(where, "\"" + s + "\": canonical fractions have denominator >= 2");
    if (num == 0)
        throw parse_error(where, "\"" + s + "\": zero is written 0, not a fraction");
    if (gcd(abs(num), den) != 1)
        throw parse_error(where, "\"" + s + "\" is not in lowest terms");
    return BigRational(num) / BigRational(den);
}

inline BigRational scalar_from_json(const Rationals&, const json& j, const std::string& where) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned() &&
            j.get<std::uint64_t>() > static_cast<std::uint64_t>(
                                         std::numeric_limits<std::int64_t>::max()))
            throw parse_error(where, "integer too large for a JSON literal; use a string");
        return BigRational(j.get<std::int64_t>());
    }
    if (j.is_string())
        return rational_from_string(j.get<std::string>(), where);
    throw parse_error(where, "expected a rational (integer or canonical string)");
}

inline std::uint64_t scalar_from_json(const PrimeField& f, const json& j,
                                      const std::string& where) {
    if (!j.is_number_integer())
        throw parse_error(where, "expected an integer residue");
    if (j.is_number_unsigned()) {
        const auto v = j.get<std::uint64_t>();
        if (v >= f.modulus())
            throw parse_error(where, "residue out of range [0, p)");
        return v;
    }
    const auto v = j.get<std::int64_t>();
    if (v < 0 || static_cast<std::uint64_t>(v) >= f.modulus())
        throw parse_error(where, "residue out of range [0, p)");
    return static_cast<std::uint64_t>(v);
}

inline ordered_json scalar_to_json(const Rationals&, const BigRational& v) {
    const BigInt num = numerator(v);
    const BigInt den = denominator(v);
    if (den == 1) {
        if (num >= std::numeric_limits<std::int64_t>::min() &&
            num <= std::numeric_limits<std::int64_t>::max())
            return ordered_json(num.convert_to<std::int64_t>());
        return ordered_json(num.str());
    }
    return ordered_json(num.str() + "/" + den.str());
}

inline ordered_json scalar_to_json(const PrimeField&, std::uint64_t v) {
    return ordered_json(v);
}

inline ordered_json field_spec_to_json(const FieldSpec& spec) {
    if (spec.kind == FieldSpec::Kind::rationals)
        return ordered_json("Q");
    ordered_json j;
    j["Fp"] = spec.p;
    return j;
}

inline FieldSpec field_spec_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "Q")
            return FieldSpec::rationals();
        throw parse_error("field", "unknown field \"" + j.get<std::string>() + "\"");
    }
    if (j.is_object()) {
        reject_unknown_keys(j, {"Fp"}, "field");
        const auto& p = require_key(j, "Fp", "field");
        const long long v = require_int(p, "field.Fp");
        if (v < 2)
            throw parse_error("field.Fp", "modulus must be at least 2");
        return FieldSpec::prime(static_cast<std::uint64_t>(v));
    }
    throw parse_error("field", "expected \"Q\" or {\"Fp\": p}");
}

template <typename F>
Matrix<F> matrix_from_json(const F& field, const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw parse_error(where, "expected a nonempty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        throw parse_error(where + "[0]", "expected a nonempty row");
    const std::size_t cols = j[0].size();
    Matrix<F> m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = j[i];
        const std::string row_where = where + "[" + std::to_string(i) + "]";
        if (!row.is_array())
            throw parse_error(row_where, "expected a row array");
        if (row.size() != cols)
            throw parse_error(row_where, "ragged matrix: row length differs");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = scalar_from_json(field, row[c],
                                          row_where + "[" + std::to_string(c) + "]");
    }
    return m;
}

template <typename F>
ordered_json matrix_to_json(const F& field, const Matrix<F>& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(scalar_to_json(field, m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Structural parse of a complex document. Shape/axiom violations are not
/// parse errors; they are left for validate() so tooling can distinguish
/// "malformed file" from "well-formed file describing an invalid complex".
template <typename F>
DoubleComplex<F> complex_from_json(const F& field, const json& j) {
    if (!j.is_object())
        throw parse_error("", "top level must be an object");
    reject_unknown_keys(j, {"field", "cells", "d1", "d2"}, "document");
    const auto spec = field_spec_from_json(require_key(j, "field", "document"));
    internal_check(spec == field_spec_of(field), "complex_from_json: field dispatch mismatch");

    DoubleComplex<F> c(field);

    const auto& cells = require_key(j, "cells", "document");
    if (!cells.is_array())
        throw parse_error("cells", "expected an array");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string where = "cells[" + std::to_string(i) + "]";
        const auto& cell = cells[i];
        if (!cell.is_object())
            throw parse_error(where, "expected an object {p, q, dim}");
        reject_unknown_keys(cell, {"p", "q", "dim"}, where);
        const long long p = require_int(require_key(cell, "p", where), where + ".p");
        const long long q = require_int(require_key(cell, "q", where), where + ".q");
        const long long dim = require_int(require_key(cell, "dim", where), where + ".dim");
        if (dim <= 0)
            throw parse_error(where + ".dim",
                              "dimension must be positive (zero cells are omitted)");
        if (c.dim(static_cast<int>(p), static_cast<int>(q)) != 0)
            throw parse_error(where, "duplicate cell");
        c.set_dim(static_cast<int>(p), static_cast<int>(q),
                  static_cast<std::size_t>(dim));
    }

    auto read_maps = [&](const char* key, auto&& setter) {
        const auto& maps = require_key(j, key, "document");
        if (!maps.is_array())
            throw parse_error(key, "expected an array");
        std::set<std::pair<long long, long long>> seen;
        for (std::size_t i = 0; i < maps.size(); ++i) {
            const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
            const auto& entry = maps[i];
            if (!entry.is_object())
                throw parse_error(where, "expected an object {p, q, matrix}");
            reject_unknown_keys(entry, {"p", "q", "matrix"}, where);
            const long long p = require_int(require_key(entry, "p", where), where + ".p");
            const long long q = require_int(require_key(entry, "q", where), where + ".q");
            if (!seen.insert({p, q}).second)
                throw parse_error(where, "duplicate differential entry");
            auto m = matrix_from_json(field, require_key(entry, "matrix", where),
                                      where + ".matrix");
            if (m.is_zero())
                throw parse_error(where + ".matrix",
                                  "zero maps are omitted in canonical form");
            setter(static_cast<int>(p), static_cast<int>(q), std::move(m));
        }
    };
    read_maps("d1", [&](int p, int q, Matrix<F> m) { c.set_d1(p, q, std::move(m)); });
    read_maps("d2", [&](int p, int q, Matrix<F> m) { c.set_d2(p, q, std::move(m)); });
    return c;
}

template <typename F>
ordered_json complex_to_json(const DoubleComplex<F>& c) {
    ordered_json j;
    j["field"] = field_spec_to_json(field_spec_of(c.field()));
    ordered_json cells = ordered_json::array();
    for (const auto& [k, d] : c.support()) {
        ordered_json cell;
        cell["p"] = k.first;
        cell["q"] = k.second;
        cell["dim"] = d;
        cells.push_back(std::move(cell));
    }
    j["cells"] = std::move(cells);
    auto maps_to_json = [&](const std::map<CellKey, Matrix<F>>& maps) {
        ordered_json out = ordered_json::array();
        for (const auto& [k, m] : maps) {
            ordered_json entry;
            entry["p"] = k.first;
            entry["q"] = k.second;
            entry["matrix"] = matrix_to_json(c.field(), m);
            out.push_back(std::move(entry));
        }
        return out;
    };
    j["d1"] = maps_to_json(c.stored_d1());
    j["d2"] = maps_to_json(c.stored_d2());
    return j;
}

template <typename F>
std::string serialize_complex(const DoubleComplex<F>& c) {
    return complex_to_json(c).dump(2) + "\n";
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error("byte " + std::to_string(e.byte), e.what());
    }
}

template <typename F>
DoubleComplex<F> parse_complex(const F& field, const std::string& text) {
    return complex_from_json(field, parse_json_text(text));
}

template <typename F>
ordered_json witness_to_json(const F& field, const Witness<F>& w) {
    ordered_json j;
    j["schema"] = "specseq/1";
    j["kind"] = "witness";
    j["field"] = field_spec_to_json(field_spec_of(field));
    j["p"] = w.p;
    j["q"] = w.q;
    j["r"] = w.r;
    if (w.r == 0) {
        ordered_json v = ordered_json::array();
        for (const auto& e : w.boundary_element)
            v.push_back(scalar_to_json(field, e));
        j["boundary_element"] = std::move(v);
    } else {
        ordered_json comps = ordered_json::array();
        for (const auto& comp : w.components) {
            ordered_json v = ordered_json::array();
            for (const auto& e : comp)
                v.push_back(scalar_to_json(field, e));
            comps.push_back(std::move(v));
        }
        j["components"] = std::move(comps);
    }
    return j;
}

template <typename F>
Witness<F> witness_from_json(const F& field, const json& j) {
    if (!j.is_object())
        throw parse_error("witness", "expected an object");
    reject_unknown_keys(j, {"schema", "kind", "field", "p", "q", "r", "components",
                            "boundary_element"},
                        "witness");
    if (require_key(j, "schema", "witness") != "specseq/1")
        throw parse_error("witness.schema", "unsupported schema");
    if (require_key(j, "kind", "witness") != "witness")
        throw parse_error("witness.kind", "expected \"witness\"");
    const auto spec = field_spec_from_json(require_key(j, "field", "witness"));
    internal_check(spec == field_spec_of(field), "witness_from_json: field dispatch mismatch");

    Witness<F> w{};
    w.p = static_cast<int>(require_int(require_key(j, "p", "witness"), "witness.p"));
    w.q = static_cast<int>(require_int(require_key(j, "q", "witness"), "witness.q"));
    w.r = static_cast<int>(require_int(require_key(j, "r", "witness"), "witness.r"));
    if (w.r < 0)
        throw parse_error("witness.r", "r must be nonnegative");

    auto vec_from = [&](const json& v, const std::string& where) {
        if (!v.is_array())
            throw parse_error(where, "expected an array of scalars");
        typename Matrix<F>::Vec out;
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(scalar_from_json(field, v[i], where + "[" + std::to_string(i) + "]"));
        return out;
    };
    if (w.r == 0) {
        if (j.contains("components"))
            throw parse_error("witness", "r = 0 witnesses carry boundary_element only");
        w.boundary_element =
            vec_from(require_key(j, "boundary_element", "witness"), "witness.boundary_element");
    } else {
        if (j.contains("boundary_element"))
            throw parse_error("witness", "r >= 1 witnesses carry components only");
        const auto& comps = require_key(j, "components", "witness");
        if (!comps.is_array() || comps.size() != static_cast<std::size_t>(w.r))
            throw parse_error("witness.components", "expected exactly r component vectors");
        for (std::size_t i = 0; i < comps.size(); ++i)
            w.components.push_back(
                vec_from(comps[i], "witness.components[" + std::to_string(i) + "]"));
    }
    return w;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Write-then-rename so readers never observe a half-written document.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error(tmp + ": cannot open for writing");
        out << content;
        if (!out.flush())
            throw std::runtime_error(tmp + ": write failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error(path + ": rename failed");
}

} // namespace specseq

#endif
