// bidisc-lab: seeded verification suites, orbit dumps and single-point map evaluation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bidisc/domains.hpp"
#include "bidisc/maps.hpp"
#include "bidisc/verify.hpp"

namespace {

using bidisc::Complex;
using nlohmann::json;

constexpr int kExitConfig = 2;

std::vector<double> parse_numbers(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos)
            throw bidisc::ConfigError("bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json map_json(const std::string& which, const std::vector<double>& xs)
{
    json j;
    j["which"] = which;
    j["input"] = xs;
    if (which == "J" || which == "H") {
        if (xs.size() != 4)
            throw bidisc::ConfigError("--point needs 4 numbers: re,im,re,im");
        const Complex z{xs[0], xs[1]}, w{xs[2], xs[3]};
        if (which == "J") {
            const bidisc::ProjectivePoint p = bidisc::map_J(z, w);
            json h = json::array();
            for (int i = 0; i < 4; ++i)
                h.push_back(complex_json(p[i]));
            j["output"] = h;
            const auto m = bidisc::contains(bidisc::DomainSpec::quadric_proj(1.0), p);
            j["residuals"] = {{"inside", m.inside}, {"margin", m.margin}, {"equality", m.equality_residual},
                              {"at_infinity", p.at_infinity()}};
        } else {
            const bidisc::MapReport r = bidisc::report_H(z, w);
            j["output"] = {complex_json(r.image[0]), complex_json(r.image[1]), complex_json(r.image[2])};
            j["residuals"] = {{"quadric", r.quadric}, {"im_condition", r.im_condition}, {"level", r.level}};
        }
    } else {
        if (xs.size() != 6)
            throw bidisc::ConfigError("--point needs 6 numbers for Hinv: re,im,re,im,re,im");
        const bidisc::C3Point h(Complex{xs[0], xs[1]}, Complex{xs[2], xs[3]}, Complex{xs[4], xs[5]});
        const bidisc::BidiscPoint p = bidisc::map_H_inv(h);
        j["output"] = {complex_json(p.z1), complex_json(p.z2)};
        j["residuals"] = {{"reproduction", (bidisc::map_H(p) - h).norm()}};
    }
    return j;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bidisc-lab: numerical checks for bidisc automorphisms, orbit maps and CR invariants"};
    app.require_subcommand(1);

    bidisc::SuiteConfig cfg;
    cfg.seed = bidisc::default_seed();
    std::vector<std::string> suites;
    std::vector<std::string> tols;
    std::string report_path;
    bool list = false;
    auto* verify = app.add_subcommand("verify", "run property suites");
    verify->add_option("--suite", suites, "suite id (repeatable; default: all; '' for none)");
    verify->add_option("--seed", cfg.seed, "seed (default: $BIDISC_LAB_SEED or 42)");
    verify->add_option("--samples", cfg.samples, "samples per suite")->check(CLI::PositiveNumber);
    verify->add_option("--rmax", cfg.rmax, "sampling radius");
    verify->add_option("--eps-diag", cfg.eps_diag, "diagonal exclusion for H");
    verify->add_option("--tol", tols, "tolerance override NAME=X (repeatable)");
    verify->add_option("--workers", cfg.workers, "worker threads");
    verify->add_option("--report", report_path, "write the JSON report here (default: stdout)");
    verify->add_flag("--list", list, "list suite ids and exit");

    std::string spec_text, out_path;
    std::size_t n = 100;
    std::uint64_t dump_seed = cfg.seed;
    auto* dump = app.add_subcommand("dump-orbit", "write orbit samples as CSV");
    dump->add_option("--spec", spec_text, "Fa:A | Eta:LEVEL | Ellipsoid:T | ComplexCurve | RealSlice")->required();
    dump->add_option("--n", n, "rows")->required();
    dump->add_option("--out", out_path, "output CSV path")->required();
    dump->add_option("--seed", dump_seed, "seed (default: $BIDISC_LAB_SEED or 42)");

    std::string which, point;
    auto* map = app.add_subcommand("map", "evaluate J, H or H^-1 at one point");
    map->add_option("--which", which, "J | H | Hinv")->required()->check(CLI::IsMember({"J", "H", "Hinv"}));
    map->add_option("--point", point, "comma-separated re,im pairs")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*verify) {
            if (list) {
                for (const auto& id : bidisc::suite_ids())
                    std::cout << id << '\n';
                return 0;
            }
            if (verify->count("--suite") > 0) {
                std::vector<std::string> chosen;
                for (const auto& s : suites)
                    if (!s.empty())
                        chosen.push_back(s);
                cfg.suites = chosen;
            }
            for (const auto& t : tols) {
                const auto eq = t.find('=');
                if (eq == std::string::npos)
                    throw bidisc::ConfigError("--tol expects NAME=X, got '" + t + "'");
                cfg.tolerances[t.substr(0, eq)] = parse_numbers(t.substr(eq + 1)).at(0);
            }
            const bidisc::VerifyResult result = bidisc::verify_all(cfg);
            const std::string text = bidisc::to_json(result, cfg).dump(2) + "\n";
            if (report_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(report_path);
                if (!f || !(f << text)) {
                    std::cerr << "error: cannot write report to '" << report_path << "'\n";
                    return kExitConfig;
                }
            }
            for (const auto& w : result.warnings)
                std::cerr << "warning: " << w << '\n';
            for (const auto& r : result.reports)
                std::cerr << (r.pass ? "PASS " : "FAIL ") << r.id << "  max_residual=" << r.max_residual
                          << "  tol=" << r.tolerance << "  n=" << r.sample_count << '\n';
            return result.exit_code;
        }
        if (*dump) {
            bidisc::dump_orbit(bidisc::OrbitSpec::parse(spec_text), n, dump_seed, out_path);
            return 0;
        }
        if (*map) {
            std::cout << map_json(which, parse_numbers(point)).dump(2) << '\n';
            return 0;
        }
    } catch (const bidisc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
