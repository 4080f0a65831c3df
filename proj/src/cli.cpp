#include "convasym/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "convasym/asymptotics.hpp"
#include "convasym/density.hpp"
#include "convasym/grid.hpp"
#include "convasym/heathbrown.hpp"
#include "convasym/numtheory.hpp"
#include "convasym/spectral.hpp"
#include "convasym/zeros.hpp"

namespace convasym {

namespace {

using json = nlohmann::ordered_json;

std::string num17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<double> parse_range(const std::string& spec) {
    std::vector<double> out;
    const auto c1 = spec.find(':');
    if (c1 == std::string::npos) {
        out.push_back(std::stod(spec));
        return out;
    }
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw InvalidInput("range: expected lo:hi:step");
    const double lo = std::stod(spec.substr(0, c1));
    const double hi = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(spec.substr(c2 + 1));
    if (!(step > 0) || hi < lo) throw InvalidInput("range: need lo <= hi and step > 0");
    for (double x = lo; x <= hi + 1e-9 * step; x += step) out.push_back(x);
    return out;
}

Complex parse_complex(const std::string& spec) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos) return Complex(std::stod(spec), 0.0);
    return Complex(std::stod(spec.substr(0, comma)), std::stod(spec.substr(comma + 1)));
}

json zeros_to_json(const std::vector<ZeroRecord>& zeros) {
    json arr = json::array();
    for (const ZeroRecord& z : zeros)
        arr.push_back({{"re", z.k.real()},
                       {"im", z.k.imag()},
                       {"multiplicity", z.multiplicity},
                       {"residual", z.residual}});
    return arr;
}

std::vector<ZeroRecord> zeros_from_json(const json& arr) {
    std::vector<ZeroRecord> out;
    for (const auto& item : arr) {
        ZeroRecord z;
        z.k = Complex(item.at("re").get<double>(), item.at("im").get<double>());
        z.multiplicity = item.value("multiplicity", 1);
        z.residual = item.value("residual", 0.0);
        out.push_back(z);
    }
    return out;
}

void emit(std::ostream& out, const std::string& path, const std::string& payload) {
    if (path.empty()) {
        out << payload;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot open output file '" + path + "'");
    f << payload;
}

struct Common {
    std::string density_spec = "burgess:lambda=0.25";
    std::string format;
    std::string output;
    bool normalize = false;
    int order = 12;
    double phase = 1.5;
    double tol = 1e-12;
    long long max_grid = 0;

    void attach(CLI::App* cmd, const std::string& default_format) {
        format = default_format;
        cmd->add_option("--density", density_spec, "density spec: burgess[:lambda=<f>] | uniform:a=<f>,b=<f> | file:<path>");
        cmd->add_option("--format", format, "output format: csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output,-o", output, "write the data stream to a file instead of stdout");
        cmd->add_flag("--normalize", normalize, "rescale a file density so its integral is 1");
        cmd->add_option("--order", order, "Gauss-Legendre nodes per panel");
        cmd->add_option("--phase", phase, "max oscillation phase per panel (radians)");
        cmd->add_option("--tol", tol, "quadrature absolute tolerance");
        cmd->add_option("--max-grid", max_grid, "lattice point cap (overrides CONVASYM_MAX_GRID)");
    }
    Density density() const { return parse_density_spec(density_spec, normalize); }
    QuadratureSpec quad() const {
        QuadratureSpec q{order, phase, tol};
        q.validate();
        return q;
    }
    std::int64_t cap() const { return max_grid > 0 ? max_grid : default_grid_cap(); }
};

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"numerical laboratory for convolution series, transform zeros, and nonresidue sums"};
    app.require_subcommand(1);

    // ft
    auto* ft_cmd = app.add_subcommand("ft", "evaluate the transform of the density at complex k");
    Common ft_opt;
    ft_opt.attach(ft_cmd, "json");
    std::string ft_k = "1.0";
    bool ft_deriv = false;
    ft_cmd->add_option("--k", ft_k, "evaluation point re[,im]");
    ft_cmd->add_flag("--derivative", ft_deriv, "evaluate the derivative instead");

    // fd
    auto* fd_cmd = app.add_subcommand("fd", "evaluate the convolution series F_d pointwise");
    Common fd_opt;
    fd_opt.attach(fd_cmd, "csv");
    std::string fd_x = "1.0";
    double fd_h = 0;
    fd_cmd->add_option("--x", fd_x, "sample points lo:hi:step or a single value");
    fd_cmd->add_option("--step", fd_h, "lattice step (default (b-a)/2048)");

    // zeros
    auto* zeros_cmd = app.add_subcommand("zeros", "enumerate transform zeros in a lower half-plane strip");
    Common zeros_opt;
    zeros_opt.attach(zeros_cmd, "json");
    double zeros_c = 6.0, zeros_R = 200.0, zeros_guard = 1e-3;
    zeros_cmd->add_option("--c", zeros_c, "strip depth");
    zeros_cmd->add_option("--rmax", zeros_R, "|Re k| bound");
    zeros_cmd->add_option("--guard", zeros_guard, "exclusion margin below the real axis");

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "direct series vs zero expansion");
    Common cmp_opt;
    cmp_opt.attach(cmp_cmd, "csv");
    double cmp_c = 6.0, cmp_h = 0;
    std::string cmp_x = "1.0:3.0:0.25";
    std::string cmp_zeros_file;
    cmp_cmd->add_option("--c", cmp_c, "strip depth for the expansion");
    cmp_cmd->add_option("--x", cmp_x, "sample points lo:hi:step");
    cmp_cmd->add_option("--step", cmp_h, "lattice step (default (b-a)/2048)");
    cmp_cmd->add_option("--zeros-file", cmp_zeros_file, "reuse a JSON zero list instead of enumerating");

    // hb
    auto* hb_cmd = app.add_subcommand("hb", "tight-Burgess special case");
    hb_cmd->require_subcommand(1);
    auto* hbz_cmd = hb_cmd->add_subcommand("zeros", "rescaled zeros for Burgess(lambda)");
    Common hbz_opt;
    hbz_opt.attach(hbz_cmd, "json");
    double hbz_lambda = 0.25, hbz_c = 8.0, hbz_R = 100.0;
    hbz_cmd->add_option("--lambda", hbz_lambda, "Burgess parameter in (0, 1/4]");
    hbz_cmd->add_option("--c", hbz_c, "reference strip depth (for Burgess(1/4))");
    hbz_cmd->add_option("--rmax", hbz_R, "reference |Re k| bound");
    auto* hbd_cmd = hb_cmd->add_subcommand("delta", "closed-form limiting density profile");
    Common hbd_opt;
    hbd_opt.attach(hbd_cmd, "csv");
    std::string hbd_theta = "0.0:0.5:0.01";
    hbd_cmd->add_option("--theta", hbd_theta, "sample points lo:hi:step");
    auto* hbc_cmd = hb_cmd->add_subcommand("check", "H(-ik/4) = (4i/k)(1 - ft(k)) residual");
    Common hbc_opt;
    hbc_opt.attach(hbc_cmd, "json");
    std::string hbc_k;
    int hbc_samples = 50;
    hbc_cmd->add_option("--k", hbc_k, "single evaluation point re[,im]");
    hbc_cmd->add_option("--samples", hbc_samples, "fixed-seed random sample count in 0.1 < |k| < 50");

    // nt
    auto* nt_cmd = app.add_subcommand("nt", "exact finite-p arithmetic");
    nt_cmd->require_subcommand(1);
    long long nt_p = 7;
    double nt_x = 0, nt_theta = -1;
    int nt_j = 1;
    auto add_p = [&](CLI::App* c) { c->add_option("--p", nt_p, "odd prime")->required(); };
    auto* ntn0 = nt_cmd->add_subcommand("n0", "least quadratic nonresidue");
    Common ntn0_opt; ntn0_opt.attach(ntn0, "json"); add_p(ntn0);
    auto* ntcount = nt_cmd->add_subcommand("count", "|N_p(X)|");
    Common ntcount_opt; ntcount_opt.attach(ntcount, "json"); add_p(ntcount);
    ntcount->add_option("--xmax", nt_x, "count nonresidues up to this bound")->required();
    auto* ntspj = nt_cmd->add_subcommand("spj", "S_{p,j}(theta)");
    Common ntspj_opt; ntspj_opt.attach(ntspj, "json"); add_p(ntspj);
    ntspj->add_option("--j", nt_j, "number of prime factors");
    ntspj->add_option("--theta", nt_theta, "exponent of p")->required();
    auto* ntpsi = nt_cmd->add_subcommand("psi", "character-weighted Chebyshev sum");
    Common ntpsi_opt; ntpsi_opt.attach(ntpsi, "json"); add_p(ntpsi);
    ntpsi->add_option("--xmax", nt_x, "sum prime powers up to this bound")->required();
    auto* ntie = nt_cmd->add_subcommand("incexc", "exact inclusion-exclusion identity");
    Common ntie_opt; ntie_opt.attach(ntie, "json"); add_p(ntie);
    ntie->add_option("--xmax", nt_x, "pair bound p^theta")->required();
    auto* ntprof = nt_cmd->add_subcommand("profile", "nonresidue density profile over a theta grid");
    Common ntprof_opt; ntprof_opt.attach(ntprof, "csv"); add_p(ntprof);
    std::string ntprof_theta = "0.1:1.0:0.1";
    ntprof->add_option("--theta", ntprof_theta, "theta grid lo:hi:step");

    // density-validate
    auto* dv_cmd = app.add_subcommand("density-validate", "report the standing hypotheses of a density");
    Common dv_opt;
    dv_opt.attach(dv_cmd, "json");

    std::vector<const char*> argv;
    argv.push_back("convasym");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (ft_cmd->parsed()) {
            const Density d = ft_opt.density();
            const Complex k = parse_complex(ft_k);
            const Complex v = ft_deriv ? ft_derivative(d, k, ft_opt.quad()) : ft(d, k, ft_opt.quad());
            if (ft_opt.format == "json")
                emit(out, ft_opt.output, json{{"re", v.real()}, {"im", v.imag()}}.dump() + "\n");
            else
                emit(out, ft_opt.output, "re,im\n" + num17(v.real()) + "," + num17(v.imag()) + "\n");
        } else if (fd_cmd->parsed()) {
            const Density d = fd_opt.density();
            const double h = fd_h > 0 ? fd_h : (d.support_hi() - d.support_lo()) / 2048.0;
            const std::vector<double> xs = parse_range(fd_x);
            double x_max = 0;
            for (double x : xs) x_max = std::max(x_max, x);
            ConvolutionChain chain(d, h, fd_opt.cap(), x_max + h);
            std::ostringstream s;
            json arr = json::array();
            if (fd_opt.format == "csv") s << "x,f\n";
            for (double x : xs) {
                const double v = chain.f_direct_at(x);
                if (fd_opt.format == "json")
                    arr.push_back({{"x", x}, {"f", v}});
                else
                    s << num17(x) << "," << num17(v) << "\n";
            }
            emit(out, fd_opt.output, fd_opt.format == "json" ? arr.dump() + "\n" : s.str());
        } else if (zeros_cmd->parsed()) {
            const Density d = zeros_opt.density();
            StripSpec strip;
            strip.c = zeros_c;
            strip.R = zeros_R;
            strip.guard_eps = zeros_guard;
            const auto zeros = enumerate_strip(d, strip, zeros_opt.quad());
            if (zeros_opt.format == "json")
                emit(out, zeros_opt.output, zeros_to_json(zeros).dump() + "\n");
            else {
                std::ostringstream s;
                s << "re,im,multiplicity,residual\n";
                for (const ZeroRecord& z : zeros)
                    s << num17(z.k.real()) << "," << num17(z.k.imag()) << "," << z.multiplicity
                      << "," << num17(z.residual) << "\n";
                emit(out, zeros_opt.output, s.str());
            }
        } else if (cmp_cmd->parsed()) {
            const Density d = cmp_opt.density();
            const double h = cmp_h > 0 ? cmp_h : (d.support_hi() - d.support_lo()) / 2048.0;
            std::vector<ZeroRecord> file_zeros;
            const std::vector<ZeroRecord>* override_ptr = nullptr;
            if (!cmp_zeros_file.empty()) {
                std::ifstream f(cmp_zeros_file);
                if (!f) throw InvalidInput("cannot open zeros file '" + cmp_zeros_file + "'");
                json j;
                f >> j;
                file_zeros = zeros_from_json(j);
                override_ptr = &file_zeros;
            }
            const ExpansionReport rep =
                compare_direct_vs_expansion(d, cmp_c, parse_range(cmp_x), h, cmp_opt.quad(), override_ptr);
            if (cmp_opt.format == "json") {
                json j{{"c", rep.c}, {"h", rep.h}, {"zeros", zeros_to_json(rep.zeros)},
                       {"rows", json::array()}};
                for (const ExpansionRow& r : rep.rows)
                    j["rows"].push_back({{"x", r.x}, {"f_direct", r.f_direct}, {"expansion", r.expansion},
                                         {"residual", r.residual}, {"scaled_residual", r.scaled_residual}});
                emit(out, cmp_opt.output, j.dump() + "\n");
            } else {
                std::ostringstream s;
                rep.write_csv(s);
                emit(out, cmp_opt.output, s.str());
            }
        } else if (hbz_cmd->parsed()) {
            StripSpec strip;
            strip.c = hbz_c;
            strip.R = hbz_R;
            const auto ref = enumerate_strip(Density::burgess(0.25), strip, hbz_opt.quad());
            emit(out, hbz_opt.output, zeros_to_json(burgess_zero_rescale(hbz_lambda, ref)).dump() + "\n");
        } else if (hbd_cmd->parsed()) {
            std::ostringstream s;
            json arr = json::array();
            if (hbd_opt.format == "csv") s << "theta,delta\n";
            for (double th : parse_range(hbd_theta)) {
                const double v = delta_burgess(th);
                if (hbd_opt.format == "json")
                    arr.push_back({{"theta", th}, {"delta", v}});
                else
                    s << num17(th) << "," << num17(v) << "\n";
            }
            emit(out, hbd_opt.output, hbd_opt.format == "json" ? arr.dump() + "\n" : s.str());
        } else if (hbc_cmd->parsed()) {
            if (!hbc_k.empty()) {
                const Complex k = parse_complex(hbc_k);
                emit(out, hbc_opt.output,
                     json{{"k_re", k.real()}, {"k_im", k.imag()},
                          {"residual", mapping_residual(k, hbc_opt.quad())}}.dump() + "\n");
            } else {
                std::mt19937 rng(12345);
                std::uniform_real_distribution<double> mag(0.1, 50.0), ang(0.0, 2.0 * M_PI);
                double worst = 0;
                for (int i = 0; i < hbc_samples; ++i) {
                    const Complex k = std::polar(mag(rng), ang(rng));
                    worst = std::max(worst, mapping_residual(k, hbc_opt.quad()));
                }
                emit(out, hbc_opt.output,
                     json{{"samples", hbc_samples}, {"max_residual", worst}}.dump() + "\n");
            }
        } else if (nt_cmd->parsed()) {
            const PrimeContext ctx(nt_p);
            if (ntn0->parsed()) {
                emit(out, ntn0_opt.output, json{{"p", nt_p}, {"n0", n0(ctx)}}.dump() + "\n");
            } else if (ntcount->parsed()) {
                emit(out, ntcount_opt.output,
                     json{{"p", nt_p}, {"xmax", nt_x}, {"count", count_nonresidues(ctx, nt_x)}}.dump() + "\n");
            } else if (ntspj->parsed()) {
                emit(out, ntspj_opt.output,
                     json{{"p", nt_p}, {"j", nt_j}, {"theta", nt_theta},
                          {"value", s_pj(ctx, nt_j, nt_theta)}}.dump() + "\n");
            } else if (ntpsi->parsed()) {
                emit(out, ntpsi_opt.output,
                     json{{"p", nt_p}, {"xmax", nt_x}, {"value", psi_p(ctx, nt_x)}}.dump() + "\n");
            } else if (ntie->parsed()) {
                const double theta = std::log(nt_x) / std::log(static_cast<double>(nt_p));
                const auto [lhs, rhs] = inclusion_exclusion_identity(ctx, theta);
                emit(out, ntie_opt.output,
                     json{{"p", nt_p}, {"xmax", nt_x}, {"lhs", lhs}, {"rhs", rhs},
                          {"equal", lhs == rhs}}.dump() + "\n");
            } else if (ntprof->parsed()) {
                const NonresidueStats stats = density_profile(ctx, parse_range(ntprof_theta));
                if (ntprof_opt.format == "json") {
                    json j{{"p", stats.p}, {"n0", stats.n0}, {"rows", json::array()}};
                    for (size_t i = 0; i < stats.theta.size(); ++i)
                        j["rows"].push_back({{"theta", stats.theta[i]}, {"count", stats.counts[i]},
                                             {"density", stats.density[i]}});
                    emit(out, ntprof_opt.output, j.dump() + "\n");
                } else {
                    std::ostringstream s;
                    stats.write_csv(s);
                    emit(out, ntprof_opt.output, s.str());
                }
            }
        } else if (dv_cmd->parsed()) {
            Density d = [&] {
                try {
                    return dv_opt.density();
                } catch (const InvalidInput&) {
                    // fall back to the unchecked loader so the report can show why
                    const std::string& spec = dv_opt.density_spec;
                    if (spec.rfind("file:", 0) != 0) throw;
                    return load_density_file_unchecked(spec.substr(5));
                }
            }();
            const ValidationReport rep = validate(d);
            json j{{"pass", rep.pass()},
                   {"normalization_defect", rep.normalization_defect},
                   {"endpoint_lo", rep.endpoint_lo},
                   {"endpoint_hi", rep.endpoint_hi},
                   {"d1", rep.d1},
                   {"d2", rep.d2},
                   {"variance", rep.variance},
                   {"max_interior_gap", rep.max_interior_gap},
                   {"c2_hypothesis", rep.c2_hypothesis},
                   {"failures", rep.failures}};
            emit(out, dv_opt.output, j.dump() + "\n");
        }
        return 0;
    } catch (const ZeroFreeLineError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericFailure& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace convasym
