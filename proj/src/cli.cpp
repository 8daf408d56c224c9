#include "gauss_neumann/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "gauss_neumann/domain_json.hpp"
#include "gauss_neumann/errors.hpp"
#include "gauss_neumann/fem2d.hpp"
#include "gauss_neumann/sl1d.hpp"
#include "gauss_neumann/thinlimit.hpp"
#include "gauss_neumann/verify.hpp"

#ifndef GN_BUILD_ID
#define GN_BUILD_ID "unknown"
#endif

namespace gauss_neumann::cli {

std::string build_id() { return GN_BUILD_ID; }

namespace {

struct VerificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_number(std::string s)
{
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    if (s == "inf" || s == "+inf" || s == "infinity")
        return kInf;
    if (s == "-inf" || s == "-infinity")
        return -kInf;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ParameterError("not a number: '" + s + "'");
    }
    if (used != s.size() || std::isnan(v))
        throw ParameterError("not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_number(item));
    return out;
}

std::string csv_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(15) << v;
    return os.str();
}

class Csv {
public:
    explicit Csv(const std::string& path) : path_(path)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw ParameterError("cannot write '" + path + "'");
        }
    }
    bool enabled() const { return file_.is_open(); }

    void row(const std::vector<std::string>& cells)
    {
        if (!enabled())
            return;
        for (std::size_t i = 0; i < cells.size(); ++i)
            file_ << (i ? "," : "") << cells[i];
        file_ << '\n';
        file_.flush();
    }

private:
    std::string path_;
    std::ofstream file_;
};

/// Joins "--opt -1,2" into "--opt=-1,2" so negative values are not taken
/// for flags.
std::vector<std::string> normalize_args(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 0; i < argc; ++i)
        args.emplace_back(argv[i]);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) == 0 && a.size() > 2 && a.find('=') == std::string::npos && i + 1 < args.size()) {
            const std::string& b = args[i + 1];
            if (b.size() > 1 && b[0] == '-' &&
                (std::isdigit(static_cast<unsigned char>(b[1])) || b[1] == '.' || b.rfind("-inf", 0) == 0)) {
                out.push_back(a + "=" + b);
                ++i;
                continue;
            }
        }
        out.push_back(a);
    }
    return out;
}

Json provenance(double h, double R, double tol)
{
    return {{"h", h}, {"R", finite_or_string(R)}, {"tol", tol}, {"build", build_id()}};
}

void emit(std::ostream& out, const Json& j, const std::string& format)
{
    if (format == "json") {
        out << j.dump() << '\n';
        return;
    }
    for (const auto& [key, value] : j.items()) {
        out << std::left << std::setw(16) << key << ' ';
        if (value.is_string())
            out << value.get<std::string>();
        else
            out << value.dump();
        out << '\n';
    }
}

void table(std::ostream& out, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& r : rows)
            width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            out << (c ? "  " : "") << std::right << std::setw(static_cast<int>(width[c])) << cells[c];
        out << '\n';
    };
    line(header);
    for (const auto& r : rows)
        line(r);
}

std::string fixed(double v, int digits = 10)
{
    if (!std::isfinite(v))
        return csv_number(v);
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

WeightSpec weight_of(const Json& file, double x0, double y0, bool x0_set, bool y0_set)
{
    WeightSpec w = file.contains("weight") ? weight_from_json(file["weight"]) : WeightSpec{};
    if (x0_set)
        w.x0 = x0;
    if (y0_set)
        w.y0 = y0;
    return w;
}

// ---------------------------------------------------------------------------

struct Solve1dArgs {
    std::string interval = "-inf,inf";
    int k = 3;
    double h = 1e-2;
    double R = std::numeric_limits<double>::quiet_NaN();
    double tail_tol = 1e-12;
    double tol = 1e-10;
    double x0 = 0.0;
    bool no_extrapolate = false;
};

int solve1d(const Solve1dArgs& a, const std::string& format, const std::string& csv_path, std::ostream& out)
{
    const auto ends = parse_list(a.interval);
    if (ends.size() != 2)
        throw ParameterError("--interval expects two values a,b");
    const Interval1D iv(ends[0], ends[1]);
    const WeightSpec w{a.x0, 0.0};
    Sl1dOptions o;
    o.h = a.h;
    o.R = a.R;
    o.tail_tol = a.tail_tol;
    o.tol = a.tol;

    std::vector<double> values, coarse, fine, err, residuals;
    Spectrum1D spec;
    if (a.no_extrapolate) {
        spec = solve_neumann_1d(w, iv, a.k, o);
        values = fine = spec.eigenvalues;
    } else {
        Extrapolated1D e = solve_neumann_1d_extrapolated(w, iv, a.k, o);
        values = e.values;
        coarse = e.coarse;
        fine = e.fine;
        err = e.error_estimate;
        spec = std::move(e.fine_spectrum);
    }
    residuals = spec.residuals;

    Json j{{"command", "solve1d"},
           {"interval", {finite_or_string(iv.a), finite_or_string(iv.b)}},
           {"weight", to_json(w)},
           {"k", a.k},
           {"eigenvalues", values},
           {"residuals", residuals},
           {"grid", to_json(spec)["grid"]},
           {"provenance", provenance(spec.grid.h(), spec.grid.truncation_radius, a.tol)}};
    if (!a.no_extrapolate) {
        j["coarse"] = coarse;
        j["fine"] = fine;
        j["error_estimate"] = err;
    }
    if (format == "json") {
        emit(out, j, format);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < values.size(); ++i)
            rows.push_back({std::to_string(i), fixed(values[i], 12), err.empty() ? "-" : fixed(err[i], 3),
                            fixed(residuals[i], 3)});
        table(out, {"n", "mu", "error_est", "residual"}, rows);
        out << "grid: h = " << spec.grid.h() << ", nodes = " << spec.grid.size()
            << ", R = " << csv_number(spec.grid.truncation_radius) << ", build " << build_id() << '\n';
    }

    Csv csv(csv_path);
    csv.row({"n", "h", "mu_coarse", "mu_fine", "mu", "error_estimate", "R", "tol", "build"});
    for (std::size_t i = 0; i < values.size(); ++i)
        csv.row({std::to_string(i), csv_number(spec.grid.h()), coarse.empty() ? "nan" : csv_number(coarse[i]),
                 csv_number(fine[i]), csv_number(values[i]), err.empty() ? "nan" : csv_number(err[i]),
                 csv_number(spec.grid.truncation_radius), csv_number(a.tol), build_id()});
    return kOk;
}

struct Solve2dArgs {
    std::string domain;
    int k = 3;
    double h = 0.05;
    double tail_tol = 1e-10;
    double R = std::numeric_limits<double>::quiet_NaN();
    double tol = 1e-10;
    int refine = 0;
    double x0 = 0.0, y0 = 0.0;
    bool x0_set = false, y0_set = false;
    bool no_extrapolate = false;
    bool no_grading = false;
    std::string vtk;
};

int solve2d(const Solve2dArgs& a, const std::string& format, const std::string& csv_path, std::ostream& out)
{
    const Json file = read_json_file(a.domain);
    const Domain d = domain_from_json(file);
    const WeightSpec w = weight_of(file, a.x0, a.y0, a.x0_set, a.y0_set);
    Fem2dOptions o;
    o.h = a.h;
    o.tail_tol = a.tail_tol;
    o.R = a.R;
    o.tol = a.tol;
    o.refine = a.refine;
    o.grading = !a.no_grading;

    std::vector<double> values, coarse, fine, err;
    Spectrum2D spec;
    if (a.no_extrapolate) {
        spec = solve_neumann_2d(w, d, a.k, o);
        values = fine = spec.eigenvalues;
    } else {
        Extrapolated2D e = solve_neumann_2d_extrapolated(w, d, a.k, o);
        values = e.values;
        coarse = e.coarse;
        fine = e.fine;
        err = e.error_estimate;
        spec = std::move(e.fine_spectrum);
    }
    const double h_used = a.h / static_cast<double>(1 << (a.refine + (a.no_extrapolate ? 0 : 1)));

    Json j{{"command", "solve2d"},
           {"domain", to_json(d)},
           {"weight", to_json(w)},
           {"k", a.k},
           {"eigenvalues", values},
           {"residuals", spec.residuals},
           {"multiplicities", to_json(spec)["multiplicities"]},
           {"mesh", mesh_summary(spec.mesh)},
           {"provenance", provenance(h_used, spec.mesh.truncation_radius, a.tol)}};
    if (!a.no_extrapolate) {
        j["coarse"] = coarse;
        j["fine"] = fine;
        j["error_estimate"] = err;
    }
    if (format == "json") {
        emit(out, j, format);
    } else {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < values.size(); ++i)
            rows.push_back({std::to_string(i), fixed(values[i], 12), err.empty() ? "-" : fixed(err[i], 3),
                            fixed(spec.residuals[i], 3)});
        table(out, {"n", "mu", "error_est", "residual"}, rows);
        out << "mesh: " << spec.mesh.vertices.size() << " nodes, " << spec.mesh.triangles.size()
            << " triangles, h_max = " << spec.mesh.h_max << ", R = " << csv_number(spec.mesh.truncation_radius)
            << ", build " << build_id() << '\n';
    }
    if (!a.vtk.empty()) {
        std::ofstream f(a.vtk);
        if (!f)
            throw ParameterError("cannot write '" + a.vtk + "'");
        std::vector<std::pair<std::string, Eigen::VectorXd>> fields;
        for (Eigen::Index i = 0; i < spec.eigenvectors.cols(); ++i)
            fields.emplace_back("mode_" + std::to_string(i), spec.eigenvectors.col(i));
        write_vtk(f, spec.mesh, fields);
    }

    Csv csv(csv_path);
    csv.row({"n", "h", "mu_coarse", "mu_fine", "mu", "error_estimate", "R", "tol", "build"});
    for (std::size_t i = 0; i < values.size(); ++i)
        csv.row({std::to_string(i), csv_number(h_used), coarse.empty() ? "nan" : csv_number(coarse[i]),
                 csv_number(fine[i]), csv_number(values[i]), err.empty() ? "nan" : csv_number(err[i]),
                 csv_number(spec.mesh.truncation_radius), csv_number(a.tol), build_id()});
    return kOk;
}

struct SweepArgs {
    std::string profile;
    std::string eps = "0.4,0.2,0.1,0.05";
    int n = 2;
    double h = 0.02;
    int refine = 0;
    double tail_tol = 1e-10;
    double tol = 1e-10;
    double x0 = 0.0, y0 = 0.0;
    bool x0_set = false, y0_set = false;
    bool cross_check = false;
    bool reference = false;
    bool eps_set = false, n_set = false, h_set = false, refine_set = false;
};

int thin_sweep(const SweepArgs& a, const std::string& format, const std::string& csv_path, std::ostream& out)
{
    const Json file = read_json_file(a.profile);
    const Json& pj = file.contains("profile") ? file["profile"] : file.contains("f") ? file["f"] : file;
    const Profile f = profile_from_json(pj);
    const WeightSpec w = weight_of(file, a.x0, a.y0, a.x0_set, a.y0_set);

    std::vector<double> eps = parse_list(a.eps);
    int n_max = a.n;
    SweepOptions o;
    o.h = a.h;
    o.refine = a.refine;
    o.tail_tol = a.tail_tol;
    o.tol = a.tol;
    o.cross_check = a.cross_check;
    o.reference_path = a.reference;
    if (file.contains("eps_list") && !a.eps_set)
        eps = file["eps_list"].get<std::vector<double>>();
    if (file.contains("n_max") && !a.n_set)
        n_max = file["n_max"].get<int>();
    if (file.contains("mesh")) {
        const Json& m = file["mesh"];
        if (m.contains("h") && !a.h_set)
            o.h = m["h"].get<double>();
        if (m.contains("refine") && !a.refine_set)
            o.refine = m["refine"].get<int>();
        if (m.contains("tail_tol"))
            o.tail_tol = m["tail_tol"].get<double>();
    }

    const SweepReport rep = sweep(w, f, eps, n_max, o);

    Json rows = Json::array();
    for (const auto& r : rep.rows) {
        Json row{{"eps", r.eps},
                 {"n", r.n},
                 {"mu", r.mu},
                 {"mu_coarse", r.mu_coarse},
                 {"mu_fine", r.mu_fine},
                 {"residual", r.residual},
                 {"defect", r.defect},
                 {"C_n", r.C},
                 {"nu_n", r.nu},
                 {"provenance", provenance(r.h, r.R, o.tol)},
                 {"nodes", r.nodes}};
        if (std::isfinite(r.mu_cross)) {
            row["mu_cross"] = r.mu_cross;
            row["cross_rel"] = r.cross_rel;
        }
        rows.push_back(row);
    }
    Json j{{"command", "thin-sweep"},
           {"profile", to_json(f)},
           {"weight", to_json(w)},
           {"eps", rep.eps},
           {"a_eps", rep.a_eps},
           {"n_max", rep.n_max},
           {"rows", rows},
           {"nu", rep.nu},
           {"C", rep.C},
           {"limits", rep.limits},
           {"monotone", rep.monotone},
           {"sandwich", rep.sandwich},
           {"bound_ok", rep.bound_ok},
           {"defects", rep.defects},
           {"defect_slope", finite_or_string(rep.defect_slope)},
           {"cauchy", rep.cauchy},
           {"build", build_id()}};
    if (std::isfinite(rep.max_cross_rel))
        j["max_cross_rel"] = rep.max_cross_rel;

    if (format == "json") {
        emit(out, j, format);
    } else {
        std::vector<std::vector<std::string>> trows;
        for (const auto& r : rep.rows)
            trows.push_back({fixed(r.eps, 6), std::to_string(r.n), fixed(r.mu, 10), fixed(r.nu, 10), fixed(r.C, 8),
                             fixed(r.defect, 4), fixed(r.residual, 2)});
        table(out, {"eps", "n", "mu", "nu", "C_n", "defect", "residual"}, trows);
        out << "limits:";
        for (double v : rep.limits)
            out << ' ' << fixed(v, 10);
        out << "\ndefect slope: " << fixed(rep.defect_slope, 4) << ", bound ok: " << (rep.bound_ok ? "yes" : "no")
            << ", build " << build_id() << '\n';
    }

    Csv csv(csv_path);
    csv.row({"eps", "n", "mu", "residual", "defect", "C_n", "nu_n", "h", "R", "tol", "build", "mu_limit"});
    for (const auto& r : rep.rows)
        csv.row({csv_number(r.eps), std::to_string(r.n), csv_number(r.mu), csv_number(r.residual),
                 csv_number(r.defect), csv_number(r.C), csv_number(r.nu), csv_number(r.h), csv_number(r.R),
                 csv_number(o.tol), build_id(), csv_number(rep.limits[static_cast<std::size_t>(r.n)])});
    return kOk;
}

struct VerifyArgs {
    std::string suite;
    std::uint64_t seed = 42;
    double h = 0.1;
    int refine = 0;
};

Json verdict_json(const Verdict& v, double solver_tol)
{
    Json details = Json::object();
    for (const auto& [k, val] : v.extra)
        details[k] = finite_or_string(val);
    return {{"check", v.check},
            {"domain", to_json(v.domain)},
            {"mu1", v.mu1},
            {"bound", v.bound},
            {"margin", v.margin},
            {"tol", v.tol},
            {"pass", v.pass},
            {"seed", v.seed},
            {"mesh",
             {{"h", v.mesh.h}, {"refine", v.mesh.refine}, {"R", finite_or_string(v.mesh.R)}, {"n_nodes", v.mesh.nodes}}},
            {"details", details},
            {"solver_tol", solver_tol},
            {"build", build_id()}};
}

int verify(const VerifyArgs& a, const std::string& format, const std::string& csv_path, std::ostream& out)
{
    VerifyOptions o;
    o.h = a.h;
    o.refine = a.refine;
    Csv csv(csv_path);
    bool header = false;
    std::size_t index = 0;
    std::vector<std::vector<std::string>> text_rows;
    bool all_pass = true;
    auto sink = [&](const Verdict& v) {
        all_pass = all_pass && v.pass;
        if (format == "json") {
            out << verdict_json(v, o.solver_tol).dump() << '\n';
            out.flush();
        } else {
            text_rows.push_back({std::to_string(index), v.check, fixed(v.mu1, 10), fixed(v.bound, 10),
                                 fixed(v.margin, 4), fixed(v.tol, 2), v.pass ? "pass" : "FAIL"});
        }
        if (!header) {
            std::vector<std::string> cols{"index", "check", "mu1", "bound", "margin", "tol", "pass", "h", "R", "build"};
            for (const auto& [k, val] : v.extra)
                cols.push_back(k);
            csv.row(cols);
            header = true;
        }
        std::vector<std::string> cells{std::to_string(index), v.check, csv_number(v.mu1), csv_number(v.bound),
                                       csv_number(v.margin), csv_number(v.tol), v.pass ? "1" : "0",
                                       csv_number(v.mesh.h), csv_number(v.mesh.R), build_id()};
        for (const auto& [k, val] : v.extra)
            cells.push_back(csv_number(val));
        csv.row(cells);
        ++index;
    };
    run_suite(a.suite, a.seed, o, sink);
    if (format != "json")
        table(out, {"#", "check", "mu1", "bound", "margin", "tol", "verdict"}, text_rows);
    if (!all_pass)
        throw VerificationFailed("verification failed for suite '" + a.suite + "'");
    return kOk;
}

struct BisectArgs {
    std::string domain;
    double angle = 0.0;
    double tol = 1e-10;
    double x0 = 0.0, y0 = 0.0;
    bool x0_set = false, y0_set = false;
};

int bisect(const BisectArgs& a, const std::string& format, std::ostream& out)
{
    const Json file = read_json_file(a.domain);
    const Domain d = domain_from_json(file);
    const WeightSpec w = weight_of(file, a.x0, a.y0, a.x0_set, a.y0_set);
    const EqualAreaCut cut = bisect_equal_area(w, d, a.angle, a.tol);
    Json j{{"command", "bisect"},
           {"domain", to_json(d)},
           {"weight", to_json(w)},
           {"angle", a.angle},
           {"offset", cut.offset},
           {"measure_below", cut.measure_below},
           {"measure_total", cut.measure_total},
           {"defect", std::abs(cut.measure_below - 0.5 * cut.measure_total) / cut.measure_total},
           {"R", finite_or_string(cut.truncation_radius)},
           {"build", build_id()}};
    emit(out, j, format);
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Neumann eigenvalues of the Gaussian-weighted Laplacian", "gauss-neumann"};
    app.require_subcommand(1);
    // --h is the mesh size, so help keeps only its long form
    app.set_help_flag("--help", "Print this help message and exit");
    std::string format;
    std::string csv_path;

    Solve1dArgs s1;
    auto* c1 = app.add_subcommand("solve1d", "Sturm-Liouville Neumann spectrum on an interval");
    c1->add_option("--interval", s1.interval, "Endpoints a,b (inf allowed)");
    c1->add_option("--k", s1.k, "Highest mode index")->check(CLI::PositiveNumber);
    c1->add_option("--h", s1.h, "Mesh size")->check(CLI::PositiveNumber);
    c1->add_option("--R", s1.R, "Truncation radius for infinite ends");
    c1->add_option("--tail-tol", s1.tail_tol, "Gaussian tail tolerance for truncation");
    c1->add_option("--tol", s1.tol, "Eigensolver residual tolerance");
    c1->add_option("--x0", s1.x0, "Weight offset");
    c1->add_flag("--no-extrapolate", s1.no_extrapolate, "Single mesh level");

    Solve2dArgs s2;
    auto* c2 = app.add_subcommand("solve2d", "Neumann spectrum on a planar domain");
    c2->add_option("--domain", s2.domain, "Domain JSON file")->required();
    c2->add_option("--k", s2.k, "Highest mode index")->check(CLI::PositiveNumber);
    c2->add_option("--h", s2.h, "Mesh size")->check(CLI::PositiveNumber);
    c2->add_option("--tail-tol", s2.tail_tol, "Gaussian tail tolerance for truncation");
    c2->add_option("--R", s2.R, "Fixed truncation radius");
    c2->add_option("--tol", s2.tol, "Eigensolver residual tolerance");
    c2->add_option("--refine", s2.refine, "Uniform refinement levels")->check(CLI::Range(0, 6));
    auto* x0_2 = c2->add_option("--x0", s2.x0, "Weight offset x0");
    auto* y0_2 = c2->add_option("--y0", s2.y0, "Weight offset y0");
    c2->add_flag("--no-extrapolate", s2.no_extrapolate, "Single mesh level");
    c2->add_flag("--no-grading", s2.no_grading, "Disable corner grading on profile domains");
    c2->add_option("--vtk", s2.vtk, "Write eigenfunctions as legacy VTK");

    SweepArgs sw;
    auto* c3 = app.add_subcommand("thin-sweep", "Eigenvalues of thin profile domains along an eps sequence");
    c3->add_option("--profile", sw.profile, "Profile or sweep config JSON file")->required();
    auto* eps_opt = c3->add_option("--eps", sw.eps, "Decreasing eps values");
    auto* n_opt = c3->add_option("--n", sw.n, "Highest mode index")->check(CLI::PositiveNumber);
    auto* h_opt = c3->add_option("--h", sw.h, "Mesh size")->check(CLI::PositiveNumber);
    auto* refine_opt = c3->add_option("--refine", sw.refine, "Coarse refinement level")->check(CLI::Range(0, 5));
    c3->add_option("--tail-tol", sw.tail_tol, "Gaussian tail tolerance for truncation");
    c3->add_option("--tol", sw.tol, "Eigensolver residual tolerance");
    auto* x0_3 = c3->add_option("--x0", sw.x0, "Weight offset x0");
    auto* y0_3 = c3->add_option("--y0", sw.y0, "Weight offset y0");
    c3->add_flag("--cross-check", sw.cross_check, "Also solve the reference-strip form");
    c3->add_flag("--reference", sw.reference, "Use the reference-strip form as the primary path");

    VerifyArgs va;
    auto* c4 = app.add_subcommand("verify", "Run a verification suite; one JSON line per verdict");
    c4->add_option("--suite", va.suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"lower-bound", "diameter", "split", "strictness"}));
    c4->add_option("--seed", va.seed, "Corpus seed");
    c4->add_option("--h", va.h, "Mesh size")->check(CLI::PositiveNumber);
    c4->add_option("--refine", va.refine, "Coarse refinement level")->check(CLI::Range(0, 5));

    BisectArgs bi;
    auto* c5 = app.add_subcommand("bisect", "Equal Gaussian area cut in a given direction");
    c5->add_option("--domain", bi.domain, "Domain JSON file")->required();
    c5->add_option("--angle", bi.angle, "Direction angle of the line normal");
    c5->add_option("--tol", bi.tol, "Relative equal-area tolerance");
    auto* x0_5 = c5->add_option("--x0", bi.x0, "Weight offset x0");
    auto* y0_5 = c5->add_option("--y0", bi.y0, "Weight offset y0");

    for (auto* sub : {c1, c2, c3, c5}) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--csv", csv_path, "Write a plot-ready CSV series");
    }
    c4->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    c4->add_option("--csv", csv_path, "Write a plot-ready CSV series");

    const auto args = normalize_args(argc, argv);
    std::vector<const char*> cargs;
    for (const auto& s : args)
        cargs.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (c1->parsed())
            return solve1d(s1, format.empty() ? "text" : format, csv_path, out);
        if (c2->parsed()) {
            s2.x0_set = x0_2->count() > 0;
            s2.y0_set = y0_2->count() > 0;
            return solve2d(s2, format.empty() ? "text" : format, csv_path, out);
        }
        if (c3->parsed()) {
            sw.x0_set = x0_3->count() > 0;
            sw.y0_set = y0_3->count() > 0;
            sw.eps_set = eps_opt->count() > 0;
            sw.n_set = n_opt->count() > 0;
            sw.h_set = h_opt->count() > 0;
            sw.refine_set = refine_opt->count() > 0;
            return thin_sweep(sw, format.empty() ? "text" : format, csv_path, out);
        }
        if (c4->parsed())
            return verify(va, format.empty() ? "json" : format, csv_path, out);
        if (c5->parsed()) {
            bi.x0_set = x0_5->count() > 0;
            bi.y0_set = y0_5->count() > 0;
            return bisect(bi, format.empty() ? "text" : format, out);
        }
    } catch (const VerificationFailed& e) {
        err << "gauss-neumann: " << e.what() << '\n';
        return kVerificationFailure;
    } catch (const ParameterError& e) {
        err << "gauss-neumann: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "gauss-neumann: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "gauss-neumann: " << e.what() << '\n';
        return kSolverFailure;
    }
    return kUsage;
}

} // namespace gauss_neumann::cli
