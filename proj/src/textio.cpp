#include "amu/textio.hpp"

#include <cstdio>
#include <sstream>

namespace amu {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16g", x);
    return buf;
}

Json json_complex(const Cx& z) {
    return Json{{"re", fmt_double(z.real())}, {"im", fmt_double(z.imag())}};
}

Json json_matrix(const Eigen::MatrixXcd& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(json_complex(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json json_header(const std::string& record, unsigned long long seed) {
    Json j;
    j["schema_version"] = 1;
    j["record"] = record;
    j["seed"] = seed;
    return j;
}

Json to_json(const ConnectionSystem& cs) {
    Json j;
    j["formula"] = cs.shifted ? "shifted-connection-system" : "connection-system";
    j["mu"] = cs.mu;
    j["nu"] = cs.nu;
    j["m"] = cs.m;
    j["lambda"] = to_string(cs.lambda);
    if (cs.shifted) {
        j["k"] = cs.k;
        j["x0"] = to_string(cs.x0);
        j["stilde0"] = cs.stilde0.str();
    }
    Json S = Json::array(), V = Json::array(), L = Json::array();
    for (int i = 0; i < cs.size; ++i) {
        Json rs = Json::array(), rv = Json::array();
        for (int q = 0; q < cs.size; ++q) {
            rs.push_back(cs.S(i, q).str());
            rv.push_back(cs.V(i, q).str());
        }
        S.push_back(rs);
        V.push_back(rv);
        L.push_back(to_string(cs.L[i]));
    }
    j["S"] = S;
    j["L"] = L;
    j["V"] = V;
    j["discriminant"] = cs.disc.str();
    return j;
}

Json to_json(const StratumLabel& lab) {
    Json j;
    j["formula"] = "stratum-by-minors";
    j["k"] = lab.k;
    j["rankS"] = lab.rank;
    j["maxwell"] = lab.maxwell;
    return j;
}

Json to_json(const ExponentSet& e) {
    Json j;
    j["formula"] = "characteristic-exponents";
    j["label"] = e.label;
    Json items = Json::array();
    for (const auto& [v, c] : e.items)
        items.push_back(Json{{"exponent", to_string(v)}, {"multiplicity", c}});
    j["items"] = items;
    j["sum"] = to_string(e.sum());
    return j;
}

Json to_json(const DeterminingEquation& de) {
    Json j;
    j["formula"] = "determining-equation";
    j["order"] = de.m;
    j["kappa"] = de.kappa;
    j["exact"] = de.exact;
    if (de.exact) {
        j["t"] = to_string(de.t_exact);
        Json cs = Json::array();
        for (const auto& c : de.pi0.c) cs.push_back(to_string(c));
        j["pi0"] = cs;
    } else {
        j["t"] = Json{{"re", de.t_hp.real().convert_to<double>()},
                      {"im", de.t_hp.imag().convert_to<double>()}};
    }
    Json roots = Json::array();
    for (const auto& [r, mult] : de.roots)
        roots.push_back(Json{{"root", to_string(r)}, {"multiplicity", mult}});
    j["roots"] = roots;
    j["unresolved_degree"] = de.unresolved;
    Json res = Json::array();
    for (const auto& [a, b] : de.resonances)
        res.push_back(Json::array({to_string(a), to_string(b)}));
    j["integer_distance_pairs"] = res;
    return j;
}

Json to_json(const BoundResult& r, const BoundQuery& q) {
    Json j;
    j["formula"] = r.formula;
    j["mu"] = q.mu;
    j["nu"] = q.nu;
    j["m"] = q.m;
    j["K"] = q.K;
    j["k1"] = q.k1;
    j["point"] = q.point == PointType::Branch ? "branch" : "regular";
    j["bound"] = r.bound;
    if (r.rho_valid) j["rho"] = to_string(r.rho);
    return j;
}

Json to_json(const PeriodSample& p) {
    Json j;
    j["formula"] = "period-integral";
    j["value"] = json_complex(p.value);
    j["error"] = fmt_double(p.error);
    j["i"] = p.i;
    j["lambda_shift"] = p.lambda_shift;
    j["cycle"] = Json{{"a", p.cycle.a},
                      {"b", p.cycle.b},
                      {"kind", p.cycle.kind == CyclePath::Segment ? "segment" : "pochhammer"}};
    j["branch_certified"] = p.branch_certified;
    return j;
}

Json to_json(const FitResult& f) {
    Json j;
    j["formula"] = "exponent-fit";
    j["rho"] = fmt_double(f.rho);
    j["rho_err"] = fmt_double(f.rho_err);
    if (f.rho_rational_ok) j["rho_rational"] = to_string(f.rho_rational);
    j["log_rank"] = f.log_rank;
    j["log_coeff"] = json_complex(f.log_coeff);
    j["quad_error"] = fmt_double(f.quad_error);
    j["fit_residual"] = fmt_double(f.fit_residual);
    Json lad = Json::array();
    for (const auto& row : f.ladder)
        lad.push_back(Json::array({fmt_double(row[0]), fmt_double(row[1]), fmt_double(row[2])}));
    j["ladder"] = lad;
    return j;
}

Json to_json(const FuchsOperator& op) {
    Json j;
    j["formula"] = op.shifted ? "shifted-annihilator" : "annihilator";
    j["mu"] = op.mu;
    j["order"] = op.order;
    if (op.shifted) {
        j["k"] = op.k;
        j["x0"] = to_string(op.x0);
    }
    j["leading"] = op.leading.str();
    j["operator"] = op.body.str();
    Json terms = Json::array();
    for (const auto& [key, c] : op.body.terms()) {
        Json t;
        t["dsp"] = key.first;
        t["d0"] = key.second;
        t["coefficient"] = c.str();
        terms.push_back(t);
    }
    j["terms"] = terms;
    return j;
}

Json to_json(const IsoReport& rep) {
    Json j;
    j["formula"] = "isomonodromy-stratum-check";
    Json samples = Json::array();
    for (const auto& s : rep.samples) {
        Json e;
        Json pt = Json::array();
        for (const auto& v : s.point) pt.push_back(to_string(v));
        e["point"] = pt;
        e["kappa"] = s.kappa;
        e["vanishing_ok"] = s.vanishing_ok;
        e["exponents"] = to_json(s.exponents);
        samples.push_back(e);
    }
    j["samples"] = samples;
    j["exponents_agree"] = rep.exponents_agree;
    j["all_vanishing_ok"] = rep.all_vanishing_ok;
    return j;
}

std::string connection_text(const ConnectionSystem& cs) {
    std::ostringstream os;
    os << (cs.shifted ? "shifted system" : "system") << " mu=" << cs.mu << " nu=" << cs.nu
       << " m=" << cs.m << " lambda=" << cs.lambda << "\n";
    os << "S =\n";
    for (int i = 0; i < cs.size; ++i) {
        os << "  [";
        for (int q = 0; q < cs.size; ++q) os << (q ? ", " : " ") << cs.S(i, q).str();
        os << " ]\n";
    }
    os << "L = diag(";
    for (int i = 0; i < cs.size; ++i) os << (i ? ", " : "") << cs.L[i];
    os << ")\nV =\n";
    for (int i = 0; i < cs.size; ++i) {
        os << "  [";
        for (int q = 0; q < cs.size; ++q) os << (q ? ", " : " ") << cs.V(i, q).str();
        os << " ]\n";
    }
    os << "discriminant = " << cs.disc.str() << "\n";
    return os.str();
}

}  // namespace amu
