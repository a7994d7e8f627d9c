#pragma once

// Verification reports: named checks with residual, tolerance and verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "spec_io.hpp"

namespace zfock
{

inline constexpr const char* tool_version = "0.3.0";
inline constexpr int report_schema = 1;

enum class Bound { at_most, at_least };

struct CheckRecord
{
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    Bound bound = Bound::at_most;
    bool pass = false;
    double wall_ms = 0.0;
    std::string note;
};

class VerificationReport
{
public:
    explicit VerificationReport(std::string suite) : suite_(std::move(suite)) {}

    /// Passes iff value <= tol (NaN fails).
    CheckRecord& at_most(const std::string& name, double value, double tol)
    {
        return push(record(name, value, tol, Bound::at_most, std::isfinite(value) && value <= tol));
    }

    /// Passes iff value >= bound.
    CheckRecord& at_least(const std::string& name, double value, double bound)
    {
        return push(record(name, value, bound, Bound::at_least, std::isfinite(value) && value >= bound));
    }

    CheckRecord& fail(const std::string& name, const std::string& why)
    {
        CheckRecord r = record(name, std::nan(""), 0.0, Bound::at_most, false);
        r.note = why;
        return push(r);
    }

    /// Runs fn, attributing its wall time to the checks it adds. Errors
    /// thrown by fn become a failed check of the given name.
    void timed(const std::string& name, const std::function<void()>& fn)
    {
        const std::size_t before = checks_.size();
        const auto t0 = std::chrono::steady_clock::now();
        try
        {
            fn();
        }
        catch (const Error& e)
        {
            fail(name, e.what());
        }
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        for (std::size_t k = before; k < checks_.size(); ++k) checks_[k].wall_ms = ms;
    }

    bool overall() const
    {
        return std::all_of(checks_.begin(), checks_.end(), [](const CheckRecord& c) { return c.pass; });
    }

    const std::vector<CheckRecord>& checks() const { return checks_; }
    const CheckRecord& check(const std::string& name) const
    {
        for (const auto& c : checks_)
            if (c.name == name) return c;
        throw Error("VerificationReport: no check named '" + name + "'");
    }
    bool has(const std::string& name) const
    {
        return std::any_of(checks_.begin(), checks_.end(), [&](const CheckRecord& c) { return c.name == name; });
    }

    json& details() { return details_; }
    const json& details() const { return details_; }
    std::vector<std::string>& warnings() { return warnings_; }
    const std::string& suite() const { return suite_; }

    void set_spec_hash(std::uint64_t h) { spec_hash_ = h; }

    json to_json(bool with_timings = false) const
    {
        json j;
        j["schema"] = report_schema;
        j["suite"] = suite_;
        j["version"] = tool_version;
        j["spec_hash"] = hex64(spec_hash_);
        j["overall"] = overall();
        json arr = json::array();
        for (const auto& c : sorted())
        {
            json r;
            r["name"] = c.name;
            r["residual"] = std::isfinite(c.residual) ? json(c.residual) : json(nullptr);
            r["tolerance"] = c.tolerance;
            r["bound"] = c.bound == Bound::at_most ? "<=" : ">=";
            r["pass"] = c.pass;
            if (!c.note.empty()) r["note"] = c.note;
            if (with_timings) r["wall_ms"] = c.wall_ms;
            arr.push_back(std::move(r));
        }
        j["checks"] = std::move(arr);
        j["details"] = details_;
        j["warnings"] = warnings_;
        return j;
    }

    void print_summary(std::ostream& os) const
    {
        os << suite_ << ": " << (overall() ? "PASS" : "FAIL") << "\n";
        for (const auto& c : sorted())
        {
            os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << " = " << c.residual
               << (c.bound == Bound::at_most ? " <= " : " >= ") << c.tolerance;
            if (!c.note.empty()) os << "  (" << c.note << ")";
            os << "\n";
        }
        for (const auto& w : warnings_) os << "  warning: " << w << "\n";
    }

private:
    static CheckRecord record(const std::string& name, double value, double tol, Bound b, bool pass)
    {
        CheckRecord r;
        r.name = name;
        r.residual = value;
        r.tolerance = tol;
        r.bound = b;
        r.pass = pass;
        return r;
    }

    CheckRecord& push(CheckRecord r)
    {
        checks_.push_back(std::move(r));
        return checks_.back();
    }

    std::vector<CheckRecord> sorted() const
    {
        auto out = checks_;
        std::stable_sort(out.begin(), out.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
        return out;
    }

    std::string suite_;
    std::vector<CheckRecord> checks_;
    json details_ = json::object();
    std::vector<std::string> warnings_;
    std::uint64_t spec_hash_ = 0;
};

inline json matrix_to_json(const CMatrix& m)
{
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r)
    {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace zfock
