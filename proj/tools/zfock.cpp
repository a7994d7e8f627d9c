// zfock: verification front end.
//
//   zfock check   SPEC [--max-level N] [--internal-dim m] [--tol t] [--json out]
//   zfock iso     LEFT RIGHT --mode factorize|equivalence|obstruction [...]
//   zfock smatrix SPEC [--theta-min a] [--theta-max b] [--points k] [--ybe-points k]
//
// Exit status: 0 pass, 1 verification failure, 2 usage or parse error.
// ZFOCK_SEED overrides the seed of the randomized probes.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "zfock/suites.hpp"

namespace
{

int emit(zfock::VerificationReport& rep, const std::string& json_out, bool timings, std::uint64_t hash)
{
    rep.set_spec_hash(hash);
    rep.print_summary(std::cout);
    if (!json_out.empty())
    {
        const std::string text = rep.to_json(timings).dump(2) + "\n";
        if (json_out == "-")
            std::cout << text;
        else
        {
            std::ofstream out(json_out);
            if (!out)
            {
                std::cerr << "zfock: cannot write '" << json_out << "'\n";
                return 2;
            }
            out << text;
        }
    }
    return rep.overall() ? 0 : 1;
}

std::uint64_t seed_from_env(std::uint64_t fallback)
{
    const char* s = std::getenv("ZFOCK_SEED");
    if (!s || !*s) return fallback;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0') throw zfock::ParseError("ZFOCK_SEED must be a non-negative integer");
    return v;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical checks for involutive R-matrices and their Fock representations"};
    app.require_subcommand(1);

    zfock::SuiteOptions opt;
    std::string json_out;
    bool timings = false;
    std::string spec_path;
    std::string right_path;
    std::string mode = "factorize";
    int internal_dim = 1;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--tol", opt.tol, "tolerance for R-matrix checks")->check(CLI::PositiveNumber);
        sub->add_option("--json", json_out, "write the full report as JSON ('-' for stdout)");
        sub->add_flag("--timings", timings, "include wall times in the JSON report");
    };

    auto* check = app.add_subcommand("check", "verify one R-matrix spec");
    check->add_option("spec", spec_path, "R-matrix spec (JSON)")->required();
    check->add_option("--max-level", opt.max_level, "Fock truncation level N")->check(CLI::Range(0, 12));
    check->add_option("--internal-dim", internal_dim, "internal dimension m")->check(CLI::Range(1, 16));
    common(check);

    auto* iso = app.add_subcommand("iso", "compare two R-matrix specs");
    iso->add_option("left", spec_path, "left spec (JSON)")->required();
    iso->add_option("right", right_path, "right spec (JSON)")->required();
    iso->add_option("--mode", mode, "factorize | equivalence | obstruction")
        ->check(CLI::IsMember({"factorize", "equivalence", "obstruction"}));
    iso->add_option("--max-level", opt.max_level, "Fock truncation level N")->check(CLI::Range(0, 12));
    iso->add_option("--internal-dim", internal_dim, "internal dimension m")->check(CLI::Range(1, 16));
    iso->add_option("--n-max", opt.n_max, "largest n for character comparison")->check(CLI::Range(1, 8));
    common(iso);

    auto* sm = app.add_subcommand("smatrix", "verify a diagonal S-matrix spec");
    sm->add_option("spec", spec_path, "S-matrix spec (JSON)")->required();
    sm->add_option("--theta-min", opt.grid.theta_min, "grid start");
    sm->add_option("--theta-max", opt.grid.theta_max, "grid end");
    sm->add_option("--points", opt.grid.points, "grid points")->check(CLI::Range(2, 1000000));
    sm->add_option("--ybe-points", opt.grid.ybe_points, "Yang-Baxter sub-grid points")->check(CLI::Range(1, 1000));
    common(sm);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    opt.internal_dim = internal_dim;

    try
    {
        opt.seed = seed_from_env(opt.seed);
        const std::string text = zfock::read_file(spec_path);
        const auto spec = zfock::parse_json_text(text, spec_path);
        if (check->parsed())
        {
            auto rep = zfock::run_check(spec, opt);
            return emit(rep, json_out, timings, zfock::fnv1a(text));
        }
        if (iso->parsed())
        {
            const std::string rtext = zfock::read_file(right_path);
            const auto rspec = zfock::parse_json_text(rtext, right_path);
            auto rep = zfock::run_iso(spec, rspec, mode, opt);
            return emit(rep, json_out, timings, zfock::fnv1a(rtext, zfock::fnv1a(text)));
        }
        auto rep = zfock::run_smatrix(spec, opt);
        return emit(rep, json_out, timings, zfock::fnv1a(text));
    }
    catch (const zfock::ParseError& e)
    {
        std::cerr << "zfock: " << e.what() << "\n";
        return 2;
    }
    catch (const zfock::Error& e)
    {
        std::cerr << "zfock: " << e.what() << "\n";
        return 1;
    }
}
