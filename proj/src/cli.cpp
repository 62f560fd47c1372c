#include "surfq/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "surfq/catalog.hpp"
#include "surfq/checks.hpp"
#include "surfq/geometry.hpp"
#include "surfq/problems.hpp"
#include "surfq/spectral.hpp"

namespace surfq::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "1.0.0";

const std::vector<std::string>& deviation_log() {
    static const std::vector<std::string> log = {
        "paraboloid height profile is H(rho) = rho^2/(2a); this matches the line element "
        "factor 1 + rho^2/a^2 and the radial potential -rho^4/(8(a^2+rho^2)^3)",
        "normal-mode amplitude is sqrt(2/epsilon), giving unit L2 norm on [0, epsilon]",
        "catenary normalization constant is reported both over the full solve domain and "
        "over the reporting window |q| <= 10",
    };
    return log;
}

double scrub_zero(double v) { return v == 0.0 ? 0.0 : v; }

std::string fmt_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), scrub_zero(v));
    return std::string(buf, res.ptr);
}

json versions_json() {
    json v;
    v["surfq"] = kVersion;
    v["compiler"] = __VERSION__;
    v["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                 "." + std::to_string(EIGEN_MINOR_VERSION);
    v["cli11"] = CLI11_VERSION;
    v["nlohmann-json"] = std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                         std::to_string(NLOHMANN_JSON_VERSION_PATCH);
    return v;
}

json manifest_base(const std::vector<std::string>& argv_copy) {
    json m;
    m["command"] = argv_copy;
    m["versions"] = versions_json();
    m["deviations"] = deviation_log();
    return m;
}

void write_json_file(const std::string& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << doc.dump(2) << '\n';
}

struct CsvWriter {
    std::ostream& os;

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) os << ',';
            os << cols[i];
        }
        os << "\r\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << "\r\n";
    }
};

// --param a=1 style key/value pairs
std::map<std::string, double> parse_params(const std::vector<std::string>& raw) {
    std::map<std::string, double> out;
    for (const auto& kv : raw) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw catalog::SpecError("bad --param '" + kv + "', expected name=value");
        }
        const std::string name = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            out[name] = v;
        } catch (const std::exception&) {
            throw catalog::SpecError("bad numeric value in --param '" + kv + "'");
        }
    }
    return out;
}

catalog::SurfaceSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw catalog::SpecError("cannot read spec file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw catalog::SpecError("bad JSON in " + path + ": " + e.what());
    }
    catalog::SurfaceSpec spec;
    if (!doc.contains("kind")) throw catalog::SpecError("spec file missing 'kind'");
    spec.kind = doc["kind"].get<std::string>();
    if (doc.contains("params")) {
        for (auto& [key, value] : doc["params"].items()) {
            spec.params[key] = value.get<double>();
        }
    }
    if (doc.contains("expression")) spec.expression = doc["expression"].get<std::string>();
    return spec;
}

json spec_json(const catalog::SurfaceSpec& spec) {
    json s;
    s["kind"] = spec.kind;
    s["params"] = json::object();
    for (const auto& [k, v] : spec.params) s["params"][k] = v;
    if (!spec.expression.empty()) s["expression"] = spec.expression;
    return s;
}

struct CurvatureArgs {
    std::string surface;
    std::vector<std::string> params;
    std::string expression;
    std::string spec_file;
    std::string at;
    std::string grid;
    std::string out;
};

catalog::SurfaceSpec spec_from_args(const CurvatureArgs& a) {
    if (!a.spec_file.empty()) return load_spec_file(a.spec_file);
    if (a.surface.empty()) throw catalog::SpecError("need --surface or --spec");
    catalog::SurfaceSpec spec;
    spec.kind = a.surface;
    spec.params = parse_params(a.params);
    spec.expression = a.expression;
    return spec;
}

std::pair<double, double> parse_pair(const std::string& text, char sep, const char* what) {
    const auto pos = text.find(sep);
    if (pos == std::string::npos) {
        throw catalog::SpecError(std::string("bad ") + what + " '" + text + "'");
    }
    try {
        return {std::stod(text.substr(0, pos)), std::stod(text.substr(pos + 1))};
    } catch (const std::exception&) {
        throw catalog::SpecError(std::string("bad ") + what + " '" + text + "'");
    }
}

json point_record(const geometry::SurfacePoint& p, const geometry::CurvatureReport& r) {
    json rec;
    rec["u1"] = scrub_zero(p.u1);
    rec["u2"] = scrub_zero(p.u2);
    rec["k1"] = scrub_zero(r.k1);
    rec["k2"] = scrub_zero(r.k2);
    rec["K"] = scrub_zero(r.total);
    rec["KG"] = scrub_zero(r.gaussian);
    rec["vs_coeff"] = scrub_zero(r.vs_coeff);
    return rec;
}

int cmd_curvature(const CurvatureArgs& args, const std::vector<std::string>& argv_copy) {
    const auto spec = spec_from_args(args);
    const auto built = catalog::build_surface(spec);

    std::vector<geometry::SurfacePoint> points;
    if (!args.at.empty()) {
        const auto [u1, u2] = parse_pair(args.at, ',', "--at point");
        points.push_back({u1, u2});
    } else {
        const std::string grid = args.grid.empty() ? "16x16" : args.grid;
        const auto [n1d, n2d] = parse_pair(grid, 'x', "--grid size");
        const int n1 = static_cast<int>(n1d), n2 = static_cast<int>(n2d);
        if (n1 < 1 || n2 < 1) throw catalog::SpecError("grid must be at least 1x1");
        const auto& dom = built.chart.domain();
        for (int i = 0; i < n1; ++i) {
            for (int j = 0; j < n2; ++j) {
                points.push_back({dom.u1_min + dom.extent_u1() * (i + 0.5) / n1,
                                  dom.u2_min + dom.extent_u2() * (j + 0.5) / n2});
            }
        }
    }

    json records = json::array();
    std::ostringstream csv_buf;
    CsvWriter csv{csv_buf};
    csv.header({"u1", "u2", "k1", "k2", "K", "KG", "vs_coeff"});
    for (const auto& p : points) {
        const auto r = geometry::curvature_report(built.chart, p);
        records.push_back(point_record(p, r));
        csv.row({fmt_double(p.u1), fmt_double(p.u2), fmt_double(r.k1), fmt_double(r.k2),
                 fmt_double(r.total), fmt_double(r.gaussian), fmt_double(r.vs_coeff)});
    }

    if (args.out.empty()) {
        std::cout << csv_buf.str();
    } else {
        std::ofstream csv_file(args.out + ".csv", std::ios::binary);
        csv_file << csv_buf.str();
        json summary;
        summary["command"] = "curvature";
        summary["surface"] = spec_json(spec);
        summary["points"] = records;
        write_json_file(args.out + ".summary.json", summary);
        json manifest = manifest_base(argv_copy);
        manifest["spec"] = spec_json(spec);
        write_json_file(args.out + ".manifest.json", manifest);
    }
    return kExitOk;
}

int cmd_potential_map(const CurvatureArgs& args, const std::vector<std::string>& argv_copy) {
    const auto spec = spec_from_args(args);
    const auto built = catalog::build_surface(spec);

    const std::string grid = args.grid.empty() ? "64x64" : args.grid;
    const auto [n1d, n2d] = parse_pair(grid, 'x', "--grid size");
    const int n1 = static_cast<int>(n1d), n2 = static_cast<int>(n2d);
    if (n1 < 1 || n2 < 1) throw catalog::SpecError("grid must be at least 1x1");

    std::ostringstream csv_buf;
    CsvWriter csv{csv_buf};
    csv.header({"u1", "u2", "x", "y", "z", "vs_coeff"});
    const auto& dom = built.chart.domain();
    for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
            geometry::SurfacePoint p{dom.u1_min + dom.extent_u1() * (i + 0.5) / n1,
                                     dom.u2_min + dom.extent_u2() * (j + 0.5) / n2};
            const auto pos = built.chart.position(p);
            const auto r = geometry::curvature_report(built.chart, p);
            csv.row({fmt_double(p.u1), fmt_double(p.u2), fmt_double(pos.x()), fmt_double(pos.y()),
                     fmt_double(pos.z()), fmt_double(r.vs_coeff)});
        }
    }

    if (args.out.empty()) {
        std::cout << csv_buf.str();
    } else {
        std::ofstream csv_file(args.out + ".csv", std::ios::binary);
        csv_file << csv_buf.str();
        json manifest = manifest_base(argv_copy);
        manifest["spec"] = spec_json(spec);
        manifest["grid"] = grid;
        write_json_file(args.out + ".manifest.json", manifest);
    }
    return kExitOk;
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
    std::string target;  // catenary | paraboloid
    double a = 1.0;
    int l = 0;
    double half_width = 80.0;  // catenary truncation
    double radius = 0.0;       // paraboloid truncation, 0 = 25a
    int cells = 0;             // coarsest ladder rung, 0 = per-problem default
    int levels = 3;
    int max_states = 6;
    std::string spec_file;     // surface spec naming catenary/paraboloid
    std::string problem_file;
    std::string export_problem;
    std::string out;
};

spectral::SturmLiouvilleProblem problem_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw catalog::SpecError("cannot read problem file " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw catalog::SpecError("bad JSON in " + path + ": " + e.what());
    }

    spectral::SturmLiouvilleProblem prob;
    prob.name = doc.value("name", "custom");
    if (!doc.contains("domain") || !doc["domain"].is_array() || doc["domain"].size() != 2) {
        throw catalog::SpecError("problem file needs \"domain\": [x_min, x_max]");
    }
    prob.x_min = doc["domain"][0].get<double>();
    prob.x_max = doc["domain"][1].get<double>();
    if (!(prob.x_max > prob.x_min)) throw catalog::SpecError("domain must be increasing");

    auto bc_of = [](const std::string& s) {
        if (s == "dirichlet") return spectral::BoundaryCondition::Dirichlet;
        if (s == "neumann") return spectral::BoundaryCondition::Neumann;
        if (s == "regular-axis") return spectral::BoundaryCondition::RegularAxis;
        throw catalog::SpecError("unknown boundary condition '" + s + "'");
    };
    if (doc.contains("bc")) {
        prob.bc_left = bc_of(doc["bc"].at(0).get<std::string>());
        prob.bc_right = bc_of(doc["bc"].at(1).get<std::string>());
    }

    std::map<std::string, double> params;
    if (doc.contains("params")) {
        for (auto& [key, value] : doc["params"].items()) params[key] = value.get<double>();
    }
    std::vector<std::string> ids = {"x"};
    for (const auto& [name, value] : params) ids.push_back(name);
    expr::EvalContext base;
    for (const auto& [name, value] : params) base.bind(name, value);

    auto coeff = [&](const char* key, double fallback) -> std::function<double(double)> {
        if (!doc.contains(key)) {
            return [fallback](double) { return fallback; };
        }
        try {
            const expr::Expr e = expr::Expr::parse(doc[key].get<std::string>(), ids);
            return [e, base](double x) {
                expr::EvalContext ctx = base;
                ctx.bind("x", x);
                return e.eval(ctx);
            };
        } catch (const std::exception& err) {
            throw catalog::SpecError(std::string("bad '") + key + "' expression: " + err.what());
        }
    };
    prob.p = coeff("p", 1.0);
    prob.q = coeff("q", 0.0);
    prob.w = coeff("w", 1.0);
    if (doc.contains("measure")) prob.measure = coeff("measure", 1.0);
    return prob;
}

json problem_export_json(const spectral::SturmLiouvilleProblem& prob, int cells) {
    const auto grid = spectral::make_grid(prob, cells);
    json doc;
    doc["name"] = prob.name;
    doc["domain"] = {prob.x_min, prob.x_max};
    auto bc_name = [](spectral::BoundaryCondition bc) {
        switch (bc) {
            case spectral::BoundaryCondition::Dirichlet: return "dirichlet";
            case spectral::BoundaryCondition::Neumann: return "neumann";
            case spectral::BoundaryCondition::RegularAxis: return "regular-axis";
        }
        return "dirichlet";
    };
    doc["bc"] = {bc_name(prob.bc_left), bc_name(prob.bc_right)};
    json nodes = json::array(), p = json::array(), q = json::array(), w = json::array(),
         measure = json::array();
    for (double x : grid.nodes) {
        nodes.push_back(x);
        p.push_back(prob.p(x));
        q.push_back(prob.q(x));
        w.push_back(prob.w(x));
        measure.push_back(prob.measure_at(x));
    }
    doc["nodes"] = nodes;
    doc["p"] = p;
    doc["q"] = q;
    doc["w"] = w;
    doc["measure"] = measure;
    return doc;
}

std::vector<int> ladder_of(int coarsest, int levels) {
    std::vector<int> ladder;
    int n = coarsest;
    for (int i = 0; i < levels; ++i) {
        ladder.push_back(n);
        n *= 2;
    }
    return ladder;
}

json state_json(const spectral::BoundState& st, int index) {
    json s;
    s["index"] = index;
    s["energy"] = st.energy;
    s["node_count"] = st.node_count;
    s["norm"] = st.norm;
    s["converged"] = st.converged;
    s["residual"] = st.residual;
    s["ladder_energies"] = st.ladder_energies;
    return s;
}

void write_wavefunction_csv(const std::string& path, const spectral::BoundState& st) {
    std::ofstream out(path, std::ios::binary);
    CsvWriter csv{out};
    csv.header({"coordinate", "psi", "potential"});
    for (std::size_t i = 0; i < st.x.size(); ++i) {
        csv.row({fmt_double(st.x[i]), fmt_double(st.samples[i]), fmt_double(st.potential[i])});
    }
}

int cmd_solve(SolveArgs args, const std::vector<std::string>& argv_copy) {
    if (!args.spec_file.empty()) {
        const auto spec = load_spec_file(args.spec_file);
        if (spec.kind != "catenary" && spec.kind != "paraboloid") {
            throw catalog::SpecError("solve --spec needs kind 'catenary' or 'paraboloid'");
        }
        args.target = spec.kind;
        if (auto it = spec.params.find("a"); it != spec.params.end()) args.a = it->second;
        if (auto it = spec.params.find("l"); it != spec.params.end()) {
            args.l = static_cast<int>(it->second);
        }
    }

    spectral::SturmLiouvilleProblem prob;
    bool is_catenary = false, is_paraboloid = false;
    if (!args.problem_file.empty()) {
        prob = problem_from_json(args.problem_file);
    } else if (args.target == "catenary") {
        if (!(args.a > 0.0)) throw catalog::SpecError("catenary needs --a > 0");
        prob = problems::build_catenary(args.a, args.half_width);
        is_catenary = true;
    } else if (args.target == "paraboloid") {
        if (!(args.a > 0.0)) throw catalog::SpecError("paraboloid needs --a > 0");
        prob = problems::build_paraboloid(args.a, args.l, args.radius);
        is_paraboloid = true;
    } else {
        throw catalog::SpecError(
            "solve needs 'catenary', 'paraboloid', --spec file.json, or --problem file.json");
    }

    const int coarsest = args.cells > 0 ? args.cells : (is_paraboloid ? 2000 : 8000);
    const std::vector<int> ladder = ladder_of(coarsest, std::max(args.levels, 3));

    if (!args.export_problem.empty()) {
        write_json_file(args.export_problem, problem_export_json(prob, coarsest));
    }

    // negative part of the spectrum on the finest grid
    const auto spectrum = spectral::negative_spectrum(prob, ladder.back());
    const int negatives = static_cast<int>(spectrum.eigenvalues.size());
    const int n_states = std::min(negatives, args.max_states);

    json summary;
    summary["command"] = "solve";
    json problem_info;
    problem_info["name"] = prob.name;
    problem_info["domain"] = {prob.x_min, prob.x_max};
    problem_info["a"] = args.a;
    if (is_paraboloid) problem_info["l"] = std::abs(args.l);
    problem_info["ladder"] = ladder;
    summary["problem"] = problem_info;
    summary["count_negative"] = negatives;
    summary["negative_spectrum"] = {{"eigenvalues", spectrum.eigenvalues},
                                    {"threshold", spectrum.threshold},
                                    {"grid_cells", spectrum.grid_cells},
                                    {"spacing", spectrum.spacing}};
    summary["states"] = json::array();

    bool all_converged = true;
    std::optional<spectral::BoundState> ground;
    for (int i = 0; i < n_states; ++i) {
        spectral::BoundState st;
        try {
            st = spectral::refine_to_convergence(prob, ladder, 1e-7, i);
        } catch (const spectral::NotConverged& nc) {
            st = nc.best;
            all_converged = false;
        }
        json s = state_json(st, i);
        if (is_catenary) {
            s["physical_energy"] = problems::catenary_physical_energy(st.energy, args.a);
            json norms;
            norms[problems::catenary_dq_convention().name] =
                problems::normalization_constant(st, problems::catenary_dq_convention());
            norms[problems::catenary_dq_full_convention().name] =
                problems::normalization_constant(st, problems::catenary_dq_full_convention());
            s["normalization"] = norms;
        }
        if (is_paraboloid) {
            s["physical_energy"] = st.energy;
            json norms;
            norms[problems::paraboloid_rho2_convention().name] =
                problems::normalization_constant(st, problems::paraboloid_rho2_convention());
            norms[problems::paraboloid_surface_convention(args.a).name] =
                problems::normalization_constant(st, problems::paraboloid_surface_convention(args.a));
            s["normalization"] = norms;
            if (st.energy < 0.0) {
                try {
                    const auto fit = problems::decay_prefactor_check(st, args.a);
                    json f;
                    f["constant"] = fit.constant;
                    f["sqrt_abs_energy"] = std::sqrt(-st.energy);
                    f["rms_relative"] = fit.rms_relative;
                    s["decay_fit"] = f;
                } catch (const std::exception& e) {
                    s["decay_fit"] = json{{"rejected", e.what()}};
                }
            }
        }
        summary["states"].push_back(s);
        if (i == 0) ground = std::move(st);
    }

    const std::string stem = args.out.empty() ? "" : args.out;
    if (!stem.empty()) {
        write_json_file(stem + ".summary.json", summary);
        if (ground) write_wavefunction_csv(stem + ".csv", *ground);
        json manifest = manifest_base(argv_copy);
        manifest["problem"] = problem_info;
        manifest["solver"] = {{"tolerance", 1e-7}, {"ladder", ladder}};
        write_json_file(stem + ".manifest.json", manifest);
    } else {
        std::cout << summary.dump(2) << '\n';
    }
    return all_converged ? kExitOk : kExitConvergence;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
    std::string target;
    std::string param_name = "a";
    std::string values;  // comma separated
    std::string range;   // start:stop:count
    int l = 0;
    int cells = 0;
    int levels = 3;
    std::string out;
};

std::vector<double> scan_values(const ScanArgs& args) {
    std::vector<double> vals;
    if (!args.values.empty()) {
        std::stringstream ss(args.values);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            vals.push_back(std::stod(item));
        }
    } else if (!args.range.empty()) {
        double start = 0, stop = 0;
        int count = 0;
        std::stringstream ss(args.range);
        std::string a, b, c;
        if (std::getline(ss, a, ':') && std::getline(ss, b, ':') && std::getline(ss, c)) {
            start = std::stod(a);
            stop = std::stod(b);
            count = std::stoi(c);
        }
        if (count >= 2) {
            for (int i = 0; i < count; ++i) {
                vals.push_back(start + (stop - start) * i / (count - 1));
            }
        }
    }
    return vals;
}

int cmd_scan(const ScanArgs& args, const std::vector<std::string>& argv_copy) {
    if (args.target != "catenary" && args.target != "paraboloid") {
        throw catalog::SpecError("scan needs 'catenary' or 'paraboloid'");
    }
    if (args.param_name != "a") {
        throw catalog::SpecError("only the length-scale parameter 'a' can be scanned");
    }
    const auto values = scan_values(args);
    if (values.size() < 2) {
        throw catalog::SpecError("scan needs at least 2 parameter values");
    }

    const bool parab = args.target == "paraboloid";
    const int coarsest = args.cells > 0 ? args.cells : (parab ? 1000 : 4000);
    const std::vector<int> ladder = ladder_of(coarsest, std::max(args.levels, 3));

    std::ostringstream csv_buf;
    CsvWriter csv{csv_buf};
    csv.header({"param", "e0", "count", "status"});
    for (double value : values) {
        std::string e0_cell, count_cell, status = "ok";
        try {
            if (!(value > 0.0)) throw catalog::SpecError("parameter must be positive");
            const auto prob = parab ? problems::build_paraboloid(value, args.l)
                                    : problems::build_catenary(value);
            const auto grid = spectral::make_grid(prob, ladder.back());
            const int count = spectral::count_negative(spectral::discretize(prob, grid));
            count_cell = std::to_string(count);
            if (count > 0) {
                const auto st = spectral::refine_to_convergence(prob, ladder, 1e-7, 0);
                e0_cell = fmt_double(st.energy);
            }
        } catch (const std::exception& e) {
            std::string msg = e.what();
            for (char& ch : msg) {
                if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
            }
            status = "error: " + msg;
        }
        csv.row({fmt_double(value), e0_cell, count_cell, status});
    }

    if (args.out.empty()) {
        std::cout << csv_buf.str();
    } else {
        std::ofstream csv_file(args.out + ".csv", std::ios::binary);
        csv_file << csv_buf.str();
        json manifest = manifest_base(argv_copy);
        manifest["scan"] = {{"target", args.target},
                            {"param", args.param_name},
                            {"values", values},
                            {"ladder", ladder}};
        write_json_file(args.out + ".manifest.json", manifest);
    }
    return kExitOk;
}

// ---------------------------------------------------------------- check

int cmd_check(const std::string& out, const std::vector<std::string>& argv_copy) {
    const auto results = checks::run_all();
    bool all_pass = true;
    json suites = json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        json s;
        s["name"] = r.name;
        s["samples"] = r.samples;
        s["worst_residual"] = r.worst_residual;
        s["threshold"] = r.threshold;
        s["pass"] = r.pass;
        suites.push_back(s);
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": worst residual "
                  << fmt_double(r.worst_residual) << " (threshold " << fmt_double(r.threshold)
                  << ", " << r.samples << " samples)\n";
    }
    if (!out.empty()) {
        json report;
        report["command"] = "check";
        report["suites"] = suites;
        report["pass"] = all_pass;
        write_json_file(out + ".summary.json", report);
        write_json_file(out + ".manifest.json", manifest_base(argv_copy));
    }
    return all_pass ? kExitOk : kExitCheck;
}

}  // namespace

int run(int argc, const char* const* argv) {
    std::vector<std::string> argv_copy(argv, argv + argc);

    CLI::App app{"curved-surface binding potentials and their bound states"};
    app.require_subcommand(1);

    CurvatureArgs curv;
    auto add_surface_opts = [](CLI::App* cmd, CurvatureArgs& a) {
        cmd->add_option("--surface", a.surface, "surface kind");
        cmd->add_option("--param", a.params, "surface parameter name=value");
        cmd->add_option("--expr", a.expression, "height-function expression for monge kinds");
        cmd->add_option("--spec", a.spec_file, "JSON surface spec file");
        cmd->add_option("--out", a.out, "output stem (csv/summary/manifest)");
    };

    auto* curvature = app.add_subcommand("curvature", "curvatures and potential at points");
    add_surface_opts(curvature, curv);
    curvature->add_option("--at", curv.at, "single point u1,u2");
    curvature->add_option("--grid", curv.grid, "sample grid N1xN2");

    CurvatureArgs pmap;
    auto* potential_map = app.add_subcommand("potential-map", "potential map over the chart");
    add_surface_opts(potential_map, pmap);
    potential_map->add_option("--grid", pmap.grid, "sample grid N1xN2");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "bound states of a reduced problem");
    solve_cmd->add_option("target", solve.target, "catenary | paraboloid");
    solve_cmd->add_option("--a", solve.a, "length scale");
    solve_cmd->add_option("--l", solve.l, "angular index (paraboloid)");
    solve_cmd->add_option("--half-width", solve.half_width, "catenary q truncation");
    solve_cmd->add_option("--radius", solve.radius, "paraboloid rho truncation (0 = 25a)");
    solve_cmd->add_option("--cells", solve.cells, "coarsest ladder cell count");
    solve_cmd->add_option("--levels", solve.levels, "ladder levels (>= 3)");
    solve_cmd->add_option("--states", solve.max_states, "max states to refine");
    solve_cmd->add_option("--spec", solve.spec_file, "JSON surface spec (catenary/paraboloid)");
    solve_cmd->add_option("--problem", solve.problem_file, "custom problem JSON");
    solve_cmd->add_option("--export-problem", solve.export_problem,
                          "write problem coefficients sampled on the coarsest grid");
    solve_cmd->add_option("--out", solve.out, "output stem");

    ScanArgs scan;
    auto* scan_cmd = app.add_subcommand("scan", "ground state across a parameter range");
    scan_cmd->add_option("target", scan.target, "catenary | paraboloid");
    scan_cmd->add_option("--param-name", scan.param_name, "parameter to scan");
    scan_cmd->add_option("--values", scan.values, "comma-separated values");
    scan_cmd->add_option("--range", scan.range, "start:stop:count");
    scan_cmd->add_option("--l", scan.l, "angular index (paraboloid)");
    scan_cmd->add_option("--cells", scan.cells, "coarsest ladder cell count");
    scan_cmd->add_option("--levels", scan.levels, "ladder levels");
    scan_cmd->add_option("--out", scan.out, "output stem");

    std::string check_out;
    auto* check_cmd = app.add_subcommand("check", "run the property self-checks");
    check_cmd->add_option("--out", check_out, "output stem for the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitSpec;
    }

    try {
        if (curvature->parsed()) return cmd_curvature(curv, argv_copy);
        if (potential_map->parsed()) return cmd_potential_map(pmap, argv_copy);
        if (solve_cmd->parsed()) return cmd_solve(solve, argv_copy);
        if (scan_cmd->parsed()) return cmd_scan(scan, argv_copy);
        if (check_cmd->parsed()) return cmd_check(check_out, argv_copy);
    } catch (const catalog::SpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSpec;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSpec;
    } catch (const geometry::DegenerateChart& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitGeometry;
    } catch (const geometry::OutsideDomain& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitGeometry;
    } catch (const geometry::FoldedLayer& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitGeometry;
    } catch (const spectral::NotConverged& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}

}  // namespace surfq::cli
