#pragma once

// JSON specs for R-matrices and diagonal S-matrices.
//
// R-matrix forms:
//   {"normal_form": [[sign, dim], ...]}
//   {"dim2": {"kind": "R2", "params": {"p": z, "q": z, "r": z, "s": z}}}
//   {"boxsum": [spec, spec]}       {"boxprod": [spec, spec]}
//   {"lift": [spec, m]}            {"conjugate": [spec, [[re, im], ...]]}
//   {"dense": {"d": d, "entries": [[re, im], ...]}}   (row-major, d^4 pairs)
// A complex number z is either a plain number or a pair [re, im].
// Keys "name" and "description" are ignored.
//
// S-matrix form:
//   {"d": d, "entries": [[{"eps": 1, "zeros": [[re, im], ...]}, ...], ...]}

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rmatrix.hpp"
#include "smatrix.hpp"

namespace zfock
{

using json = nlohmann::json;

/// Malformed or unreadable spec.
class ParseError : public Error
{
public:
    using Error::Error;
};

namespace detail
{

inline Complex parse_complex(const json& j, const std::string& where)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ParseError(where + ": expected a number or [re, im]");
}

inline Index parse_dim(const json& j, const std::string& where)
{
    if (!j.is_number_integer() || j.get<long long>() < 1) throw ParseError(where + ": expected a positive integer");
    return static_cast<Index>(j.get<long long>());
}

inline CMatrix parse_square(const json& entries, Index d, const std::string& where)
{
    if (!entries.is_array()) throw ParseError(where + ": entries must be an array");
    // accept a flat list of d*d pairs or a list of d rows
    std::vector<json> flat;
    if (entries.size() == static_cast<std::size_t>(d) && d > 0 && entries[0].is_array() &&
        entries[0].size() == static_cast<std::size_t>(d))
    {
        for (const auto& row : entries)
            for (const auto& e : row) flat.push_back(e);
    }
    else
        for (const auto& e : entries) flat.push_back(e);
    if (flat.size() != static_cast<std::size_t>(d * d))
        throw ParseError(where + ": expected " + std::to_string(d * d) + " entries, got " + std::to_string(flat.size()));
    CMatrix m(d, d);
    for (Index r = 0; r < d; ++r)
        for (Index c = 0; c < d; ++c) m(r, c) = parse_complex(flat[static_cast<std::size_t>(r * d + c)], where);
    return m;
}

inline const json& single_form(const json& j, std::string& key)
{
    if (!j.is_object()) throw ParseError("R-matrix spec must be a JSON object");
    const json* found = nullptr;
    for (auto it = j.begin(); it != j.end(); ++it)
    {
        if (it.key() == "name" || it.key() == "description") continue;
        if (found) throw ParseError("R-matrix spec has more than one form (" + key + ", " + it.key() + ")");
        key = it.key();
        found = &it.value();
    }
    if (!found) throw ParseError("R-matrix spec is empty");
    return *found;
}

} // namespace detail

inline RMatrix parse_rmatrix(const json& j)
{
    std::string key;
    const json& v = detail::single_form(j, key);
    try
    {
        if (key == "normal_form")
        {
            if (!v.is_array() || v.empty()) throw ParseError("normal_form: expected a non-empty list of [sign, dim]");
            NormalFormSpec spec;
            for (const auto& b : v)
            {
                if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer())
                    throw ParseError("normal_form: each block is [sign, dim]");
                spec.push_back({b[0].get<int>(), detail::parse_dim(b[1], "normal_form")});
            }
            return make_normal_form(spec);
        }
        if (key == "dim2")
        {
            if (!v.is_object() || !v.contains("kind") || !v["kind"].is_string())
                throw ParseError("dim2: expected {\"kind\": ..., \"params\": {...}}");
            Dim2Params prm;
            if (v.contains("params"))
            {
                const json& p = v["params"];
                if (!p.is_object()) throw ParseError("dim2: params must be an object");
                for (auto it = p.begin(); it != p.end(); ++it)
                {
                    const Complex z = detail::parse_complex(it.value(), "dim2." + it.key());
                    if (it.key() == "p") prm.p = z;
                    else if (it.key() == "q") prm.q = z;
                    else if (it.key() == "r") prm.r = z;
                    else if (it.key() == "s") prm.s = z;
                    else throw ParseError("dim2: unknown parameter '" + it.key() + "'");
                }
            }
            Dim2Kind kind;
            try
            {
                kind = parse_dim2_kind(v["kind"].get<std::string>());
            }
            catch (const Error& e)
            {
                throw ParseError(e.what());
            }
            return make_dim2(kind, prm);
        }
        if (key == "boxsum" || key == "boxprod")
        {
            if (!v.is_array() || v.size() != 2) throw ParseError(key + ": expected [spec, spec]");
            const RMatrix a = parse_rmatrix(v[0]);
            const RMatrix b = parse_rmatrix(v[1]);
            return key == "boxsum" ? box_sum(a, b) : box_product(a, b);
        }
        if (key == "lift")
        {
            if (!v.is_array() || v.size() != 2) throw ParseError("lift: expected [spec, m]");
            return lift_with_internal(parse_rmatrix(v[0]), detail::parse_dim(v[1], "lift"));
        }
        if (key == "conjugate")
        {
            if (!v.is_array() || v.size() != 2) throw ParseError("conjugate: expected [spec, unitary-entries]");
            const RMatrix s = parse_rmatrix(v[0]);
            return conjugate(s, detail::parse_square(v[1], s.base_dim, "conjugate"));
        }
        if (key == "dense")
        {
            if (!v.is_object() || !v.contains("d") || !v.contains("entries"))
                throw ParseError("dense: expected {\"d\": d, \"entries\": [...]}");
            const Index d = detail::parse_dim(v["d"], "dense.d");
            const json& e = v["entries"];
            if (!e.is_array() || e.size() != static_cast<std::size_t>(d * d * d * d))
                throw ParseError("dense: expected " + std::to_string(d * d * d * d) + " [re, im] entries");
            CMatrix m(d * d, d * d);
            for (Index r = 0; r < d * d; ++r)
                for (Index c = 0; c < d * d; ++c)
                    m(r, c) = detail::parse_complex(e[static_cast<std::size_t>(r * d * d + c)], "dense.entries");
            return {d, m};
        }
    }
    catch (const ParseError&)
    {
        throw;
    }
    catch (const json::exception& e)
    {
        throw ParseError(key + ": " + e.what());
    }
    catch (const Error& e)
    {
        // construction preconditions (unit modulus, unitary Q, ...) are spec errors
        throw ParseError(e.what());
    }
    throw ParseError("unknown R-matrix form '" + key + "'");
}

/// Top-level box-sum factors, if the spec is a box-sum.
inline std::optional<std::pair<RMatrix, RMatrix>> boxsum_factors(const json& j)
{
    std::string key;
    const json& v = detail::single_form(j, key);
    if (key != "boxsum") return std::nullopt;
    return std::make_pair(parse_rmatrix(v[0]), parse_rmatrix(v[1]));
}

inline DiagonalSMatrix parse_smatrix(const json& j)
{
    try
    {
        if (!j.is_object() || !j.contains("d") || !j.contains("entries"))
            throw ParseError("S-matrix spec: expected {\"d\": d, \"entries\": [[...]]}");
        const Index d = detail::parse_dim(j["d"], "S-matrix d");
        const json& rows = j["entries"];
        if (!rows.is_array() || rows.size() != static_cast<std::size_t>(d))
            throw ParseError("S-matrix spec: entries must have d rows");
        std::vector<std::vector<GLimFunction>> entries;
        for (const auto& row : rows)
        {
            if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
                throw ParseError("S-matrix spec: each row must have d entries");
            std::vector<GLimFunction> out;
            for (const auto& e : row)
            {
                if (!e.is_object() || !e.contains("eps") || !e["eps"].is_number_integer())
                    throw ParseError("S-matrix spec: entry needs an integer \"eps\"");
                std::vector<Complex> zeros;
                if (e.contains("zeros"))
                {
                    if (!e["zeros"].is_array()) throw ParseError("S-matrix spec: zeros must be a list");
                    for (const auto& z : e["zeros"]) zeros.push_back(detail::parse_complex(z, "zeros"));
                }
                out.emplace_back(e["eps"].get<int>(), std::move(zeros));
            }
            entries.push_back(std::move(out));
        }
        return DiagonalSMatrix(d, std::move(entries));
    }
    catch (const ParseError&)
    {
        throw;
    }
    catch (const json::exception& e)
    {
        throw ParseError(std::string("S-matrix spec: ") + e.what());
    }
    catch (const Error& e)
    {
        throw ParseError(e.what());
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json_text(const std::string& text, const std::string& origin)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw ParseError(origin + ": " + e.what());
    }
}

/// 64-bit FNV-1a, used to fingerprint spec files in reports.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 14695981039346656037ULL)
{
    for (unsigned char c : data)
    {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    std::ostringstream ss;
    ss << std::hex;
    ss.width(16);
    ss.fill('0');
    ss << v;
    return ss.str();
}

} // namespace zfock
