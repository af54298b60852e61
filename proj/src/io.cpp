#include "solenoid/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "solenoid/error.hpp"

namespace solenoid {

double r12(double x)
{
    if (!std::isfinite(x)) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

namespace {

double num(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number()) throw InputError(std::string("missing numeric field '") + key + "'");
    return j[key].get<double>();
}

}  // namespace

CircleFunction tau_from_json(const json& in, int n_grid)
{
    if (!in.is_object()) throw InputError("tau spec must be a JSON object");
    if (in.contains("tau")) return tau_from_json(in["tau"], n_grid);
    if (!in.contains("type") || !in["type"].is_string()) throw InputError("tau spec needs a string 'type'");
    const std::string type = in["type"];
    if (type == "trigpoly") {
        TrigPoly p;
        if (in.contains("constant")) p.constant = num(in, "constant");
        if (in.contains("terms")) {
            if (!in["terms"].is_array()) throw InputError("'terms' must be an array");
            for (const auto& t : in["terms"]) {
                if (!t.is_object() || !t.contains("k") || !t["k"].is_number_integer())
                    throw InputError("each term needs an integer 'k'");
                const int k = t["k"].get<int>();
                if (k < 1) throw InputError("term frequencies must be positive");
                p.terms.push_back({k, t.value("cos", 0.0), t.value("sin", 0.0)});
            }
        }
        return from_trig_poly(p, in.contains("grid") ? in["grid"].get<int>() : n_grid);
    }
    if (type == "samples") {
        if (!in.contains("values") || !in["values"].is_array()) throw InputError("'values' must be an array");
        const auto& v = in["values"];
        Eigen::VectorXd s(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw InputError("sample values must be numbers");
            s[static_cast<Eigen::Index>(i)] = v[i].get<double>();
        }
        return from_samples(std::move(s));
    }
    if (type == "fat_hole") {
        const FatHoleParams fp = fat_hole_params(num(in, "lambda"));
        const int n = in.contains("grid") ? in["grid"].get<int>() : fat_hole_default_grid(fp);
        return build_fat_hole(fp, n);
    }
    throw InputError("unknown tau type '" + type + "'");
}

json load_json_arg(const std::string& arg)
{
    std::string text = arg;
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw InputError("empty JSON argument");
    if (arg[first] != '{' && arg[first] != '[') {
        std::ifstream f(arg);
        if (!f) throw InputError("cannot open '" + arg + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

json tau_to_json(const CircleFunction& f)
{
    if (f.closed_form) {
        json terms = json::array();
        for (const auto& t : f.closed_form->terms)
            terms.push_back({{"k", t.k}, {"cos", r12(t.cos_c)}, {"sin", r12(t.sin_c)}});
        return {{"type", "trigpoly"}, {"constant", r12(f.closed_form->constant)}, {"terms", terms}, {"grid", f.n()}};
    }
    json v = json::array();
    for (Eigen::Index i = 0; i < f.samples.size(); ++i) v.push_back(r12(f.samples[i]));
    return {{"type", "samples"}, {"values", v}};
}

json to_json(const AttractorClassification& c)
{
    json j = {{"verdict", to_string(c.verdict)},
              {"jordan_gap", r12(c.jordan_gap)},
              {"annulus_margin", r12(c.annulus_margin)},
              {"union_defect", r12(c.union_defect)}};
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

json to_json(const Decomposition& d, double tol)
{
    json f = json::array();
    for (double x : d.factors) f.push_back(r12(x));
    return {{"factors", f},
            {"residual_spec", tau_to_json(d.residual)},
            {"residual_norm", r12(d.residual.samples.lpNorm<Eigen::Infinity>())},
            {"residual_irreducible", d.residual_irreducible},
            {"reconstruction_error", r12(d.reconstruction_error)},
            {"tol", tol}};
}

json to_json(const std::vector<JordanRoot>& roots)
{
    json a = json::array();
    for (const auto& r : roots)
        a.push_back({{"lambda", r12(r.lambda)}, {"mult", r.multiplicity}, {"g_value", r12(r.g_value)}});
    return a;
}

json to_json(const PeriodicOrbit& o)
{
    json pts = json::array();
    for (double x : o.points) pts.push_back(r12(x));
    json j = {{"period", o.period}, {"j", o.j}, {"denom", o.denom}, {"numerators", o.numerators}, {"points", pts}};
    if (o.birkhoff_sum) j["sum"] = r12(*o.birkhoff_sum);
    return j;
}

json to_json(const BirkhoffExtremes& be)
{
    json orbits = json::array();
    for (const auto& o : be.orbits) orbits.push_back(to_json(o));
    return {{"orbits", orbits},
            {"best_positive", be.best_positive ? to_json(*be.best_positive) : json(nullptr)},
            {"best_negative", be.best_negative ? to_json(*be.best_negative) : json(nullptr)}};
}

json to_json(const FatHoleParams& fp)
{
    json cyc = json::array(), eps = json::array();
    for (int j = 0; j < fp.p; ++j) cyc.push_back(r12(fp.theta(j)));
    for (double e : fp.epsilons) eps.push_back(r12(e));
    return {{"lambda", r12(fp.lambda)},  {"p", fp.p},
            {"eta", r12(fp.eta)},        {"theta_cycle", cyc},
            {"delta", r12(fp.delta)},    {"t0", r12(fp.t0)},
            {"t1", r12(fp.t1)},          {"n_cap", fp.n_cap},
            {"epsilons", eps},           {"lambda_prime", r12(fp.lambda_prime)},
            {"eta_prime", r12(fp.eta_prime)}};
}

json to_json(const FatHoleReport& r)
{
    json cyc = json::array();
    for (double v : r.rho_plus_cycle) cyc.push_back(r12(v));
    return {{"lower_zero", r.lower_zero},
            {"cycle_values", r.cycle_values},
            {"antipode_bound", r.antipode_bound},
            {"negative_margin", r.negative_margin},
            {"interior_witness", r.interior_witness},
            {"sup_rho_minus", r12(r.sup_rho_minus)},
            {"rho_plus_cycle", cyc},
            {"rho_plus_antipode", r12(r.rho_plus_antipode)},
            {"margin_theta1", r12(r.margin_theta1)},
            {"worst_cover_gap", r12(r.worst_cover_gap)}};
}

json to_json(const GraphConstants& gc)
{
    return {{"ell0", r12(gc.ell0)}, {"lambda0", r12(gc.lambda0)}, {"c12", r12(gc.c12)},
            {"c21", r12(gc.c21)},   {"c", r12(gc.c)},             {"lambda_hat", r12(gc.lambda_hat)}};
}

namespace {

template <class T>
T field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    try {
        return j[key].get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("bad field '") + key + "'");
    }
}

Verdict verdict_from_string(const std::string& s)
{
    for (Verdict v : {Verdict::JordanCurve, Verdict::ClosedAnnulus, Verdict::NotAnnulus, Verdict::Undetermined})
        if (s == to_string(v)) return v;
    throw InputError("unknown verdict '" + s + "'");
}

}  // namespace

AttractorClassification classification_from_json(const json& j)
{
    AttractorClassification c;
    c.verdict = verdict_from_string(field<std::string>(j, "verdict"));
    c.jordan_gap = field<double>(j, "jordan_gap");
    c.annulus_margin = field<double>(j, "annulus_margin");
    c.union_defect = field<double>(j, "union_defect");
    if (j.contains("notes")) c.notes = field<std::string>(j, "notes");
    return c;
}

Decomposition decomposition_from_json(const json& j)
{
    Decomposition d;
    d.factors = field<std::vector<double>>(j, "factors");
    d.residual = tau_from_json(field<json>(j, "residual_spec"));
    d.residual_irreducible = field<bool>(j, "residual_irreducible");
    d.reconstruction_error = field<double>(j, "reconstruction_error");
    return d;
}

std::vector<JordanRoot> roots_from_json(const json& j)
{
    if (!j.is_array()) throw InputError("root list must be an array");
    std::vector<JordanRoot> out;
    for (const auto& r : j)
        out.push_back({field<double>(r, "lambda"), field<int>(r, "mult"), field<double>(r, "g_value")});
    return out;
}

PeriodicOrbit orbit_from_json(const json& j)
{
    PeriodicOrbit o;
    o.period = field<int>(j, "period");
    o.j = field<std::uint64_t>(j, "j");
    o.denom = field<std::uint64_t>(j, "denom");
    o.numerators = field<std::vector<std::uint64_t>>(j, "numerators");
    o.points = field<std::vector<double>>(j, "points");
    if (j.contains("sum")) o.birkhoff_sum = field<double>(j, "sum");
    if (o.numerators.size() != static_cast<std::size_t>(o.period) || o.points.size() != o.numerators.size())
        throw InputError("orbit length does not match its period");
    return o;
}

BirkhoffExtremes extremes_from_json(const json& j)
{
    BirkhoffExtremes be;
    for (const auto& o : field<json>(j, "orbits")) be.orbits.push_back(orbit_from_json(o));
    if (!field<json>(j, "best_positive").is_null()) be.best_positive = orbit_from_json(j["best_positive"]);
    if (!field<json>(j, "best_negative").is_null()) be.best_negative = orbit_from_json(j["best_negative"]);
    return be;
}

FatHoleParams fat_hole_params_from_json(const json& j)
{
    FatHoleParams fp;
    fp.lambda = field<double>(j, "lambda");
    fp.p = field<int>(j, "p");
    if (fp.p < 2 || fp.p > 40) throw InputError("fat hole period out of range");
    fp.eta = field<double>(j, "eta");
    fp.cycle_denom = (std::uint64_t{1} << fp.p) - 1;
    fp.cycle_num.resize(fp.p);
    fp.cycle_num[0] = std::uint64_t{1} << (fp.p - 1);
    for (int i = 1; i < fp.p; ++i) fp.cycle_num[i] = std::uint64_t{1} << (i - 1);
    fp.delta = field<double>(j, "delta");
    fp.t0 = field<double>(j, "t0");
    fp.t1 = field<double>(j, "t1");
    fp.n_cap = field<int>(j, "n_cap");
    fp.epsilons = field<std::vector<double>>(j, "epsilons");
    if (fp.epsilons.size() != static_cast<std::size_t>(fp.p)) throw InputError("need one epsilon per cycle point");
    fp.lambda_prime = field<double>(j, "lambda_prime");
    fp.eta_prime = field<double>(j, "eta_prime");
    return fp;
}

FatHoleReport fat_hole_report_from_json(const json& j)
{
    FatHoleReport r;
    r.lower_zero = field<bool>(j, "lower_zero");
    r.cycle_values = field<bool>(j, "cycle_values");
    r.antipode_bound = field<bool>(j, "antipode_bound");
    r.negative_margin = field<bool>(j, "negative_margin");
    r.interior_witness = field<bool>(j, "interior_witness");
    r.sup_rho_minus = field<double>(j, "sup_rho_minus");
    r.rho_plus_cycle = field<std::vector<double>>(j, "rho_plus_cycle");
    r.rho_plus_antipode = field<double>(j, "rho_plus_antipode");
    r.margin_theta1 = field<double>(j, "margin_theta1");
    r.worst_cover_gap = field<double>(j, "worst_cover_gap");
    return r;
}

GraphConstants constants_from_json(const json& j)
{
    GraphConstants gc;
    gc.ell0 = field<double>(j, "ell0");
    gc.lambda0 = field<double>(j, "lambda0");
    gc.c12 = field<double>(j, "c12");
    gc.c21 = field<double>(j, "c21");
    gc.c = field<double>(j, "c");
    gc.lambda_hat = field<double>(j, "lambda_hat");
    return gc;
}

void write_boundaries_csv(std::ostream& os, const BoundaryPair& b)
{
    const int n = b.rho_plus.n();
    os << "theta,rho_minus,rho_plus\n" << std::setprecision(12);
    for (int i = 0; i < n; ++i)
        os << static_cast<double>(i) / n << ',' << b.rho_minus.samples[i] << ',' << b.rho_plus.samples[i] << '\n';
}

void write_points_csv(std::ostream& os, const PointCloud& pc)
{
    os << "theta,t\n" << std::setprecision(12);
    for (Eigen::Index i = 0; i < pc.theta.size(); ++i) os << pc.theta[i] << ',' << pc.t[i] << '\n';
}

int RasterImage::row_of(double t) const
{
    // round-off just above a row edge stays in the lower row
    const double y = (t_hi - t) / (t_hi - t_lo) * height + 1e-6;
    return std::clamp(static_cast<int>(std::floor(y)), 0, height - 1);
}

int RasterImage::col_of(double theta) const
{
    return std::clamp(static_cast<int>(std::floor(wrap01(theta) * width)), 0, width - 1);
}

RasterImage make_raster(int width, int height, double t0)
{
    if (width < 1 || height < 1 || !(t0 > 0.0)) throw InputError("raster needs positive size and strip");
    RasterImage img;
    img.width = width;
    img.height = height;
    img.t_lo = -t0;
    img.t_hi = t0;
    img.cells.assign(static_cast<std::size_t>(width) * height, 0);
    return img;
}

void render_points(RasterImage& img, const PointCloud& pc, std::uint8_t value)
{
    if (pc.theta.size() == 0) throw InputError("EmptyInput");
    for (Eigen::Index i = 0; i < pc.theta.size(); ++i) img.at(img.row_of(pc.t[i]), img.col_of(pc.theta[i])) = value;
}

void render_band(RasterImage& img, const BoundaryPair& b, std::uint8_t value)
{
    for (int c = 0; c < img.width; ++c) {
        const double th = (c + 0.5) / img.width;
        const int top = img.row_of(evaluate(b.rho_plus, th));
        const int bot = img.row_of(evaluate(b.rho_minus, th));
        for (int r = top; r <= bot; ++r) img.at(r, c) = std::max(img.at(r, c), value);
    }
}

void write_pgm(std::ostream& os, const RasterImage& img)
{
    os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.cells.data()), static_cast<std::streamsize>(img.cells.size()));
}

}  // namespace solenoid
