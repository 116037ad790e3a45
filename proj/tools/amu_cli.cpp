#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "amu/textio.hpp"
#include "amu/verify.hpp"

namespace {

using namespace amu;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

bool looks_float(const std::string& t) {
    return t.find('.') != std::string::npos || t.find('e') != std::string::npos ||
           t.find('E') != std::string::npos;
}

std::vector<Rational> parse_rationals(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& t : split_list(s)) out.push_back(parse_rational(t));
    return out;
}

Cx parse_complex(const std::string& t) {
    auto colon = t.find(':');
    if (colon == std::string::npos) return Cx(std::stod(t), 0.0);
    return Cx(std::stod(t.substr(0, colon)), std::stod(t.substr(colon + 1)));
}

std::vector<Cx> parse_complexes(const std::string& s) {
    std::vector<Cx> out;
    for (const auto& t : split_list(s)) out.push_back(parse_complex(t));
    return out;
}

void emit(const Json& payload, const std::string& record, unsigned long long seed) {
    Json j = json_header(record, seed);
    j.update(payload);
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and numerical toolkit for the A_mu versal deformation connection"};
    app.set_config("--config");
    app.fallthrough(true);
    unsigned long long seed = 312528;
    app.add_option("--seed", seed, "seed recorded in outputs and used by randomized suites");

    double tol_override = -1;
    if (const char* env = std::getenv("AMU_PREC")) tol_override = std::atof(env);

    int mu = 2, nu = 2, m = 1, kshift = 0;
    std::string sArg, pointArg, cycleArg, specializeArg, x0Arg;

    auto add_mnm = [&](CLI::App* cmd) {
        cmd->add_option("--mu", mu, "number of deformation parameters (2..8)");
        cmd->add_option("--nu", nu, "y-degree of the curve");
        cmd->add_option("--m", m, "y-power of the integrand; lambda = m/nu");
    };

    // ---- system
    auto* cSystem = app.add_subcommand("system", "connection S dK/ds0 = (L+V)K and discriminant");
    add_mnm(cSystem);
    bool sysJson = false;
    cSystem->add_flag("--json", sysJson, "emit JSON instead of text");

    // ---- strata
    auto* cStrata = app.add_subcommand("strata", "stratum of a point on the discriminant");
    add_mnm(cStrata);
    cStrata->add_option("--point", pointArg, "comma-separated s0,..,s_{mu-1}; rational or float")
        ->required();

    // ---- operator
    auto* cOperator = app.add_subcommand("operator", "annihilating operator of K_0 (or shifted)");
    add_mnm(cOperator);
    bool shifted = false;
    cOperator->add_flag("--shifted", shifted, "build the order mu+1 operator at base point x0");
    cOperator->add_option("--k", kshift, "index shift of the integrand");
    cOperator->add_option("--x0", x0Arg, "base point (rational)");
    cOperator->add_option("--specialize", specializeArg, "rational values for s1,..,s_{mu-1}");

    // ---- exponents
    auto* cExp = app.add_subcommand("exponents", "closed-form characteristic exponents");
    add_mnm(cExp);
    std::string familyArg = "4.2", singArg = "omega";
    cExp->add_option("--family", familyArg, "4.1 | 4.2 | 4.3e | 4.3o");
    cExp->add_option("--point", singArg, "omega | zero | inf");
    cExp->add_option("--k", kshift, "shift index");
    bool computed = false;
    cExp->add_flag("--computed", computed, "also compute from the determining equation");

    // ---- isocheck
    auto* cIso = app.add_subcommand("isocheck", "exponent invariance along stratum samples");
    add_mnm(cIso);
    std::string samplesFile;
    cIso->add_option("--stratum-samples", samplesFile, "JSON file: array of rational points")
        ->required();
    int strk = 0;
    cIso->add_option("--k", strk, "claimed stratum depth");

    // ---- bounds
    auto* cBounds = app.add_subcommand("bounds", "zero-multiplicity bound");
    add_mnm(cBounds);
    int K = 0, k1 = 0;
    std::string ptype = "branch";
    cBounds->add_option("--K", K, "total degree of the x-factor");
    cBounds->add_option("--k1", k1, "multiplicity at the possibly-critical x factor");
    cBounds->add_option("--point", ptype, "branch | regular");

    // ---- periods
    auto* cPeriods = app.add_subcommand("periods", "period integral over a cycle");
    add_mnm(cPeriods);
    int ipow = 0, lshift = 0;
    bool poch = false;
    cPeriods->add_option("--s", sArg, "comma-separated s values (re or re:im)")->required();
    cPeriods->add_option("--cycle", cycleArg, "root indices a,b");
    cPeriods->add_option("--i", ipow, "z power in the integrand");
    cPeriods->add_option("--lambda-shift", lshift, "integer shift of the exponent");
    cPeriods->add_flag("--pochhammer", poch, "double-loop regularized cycle");

    // ---- residual
    auto* cResidual = app.add_subcommand("residual", "connection residual at a point off D");
    add_mnm(cResidual);
    cResidual->add_option("--s", sArg, "comma-separated s values")->required();
    cResidual->add_option("--cycle", cycleArg, "root indices a,b (default: best clearance)");

    // ---- fit
    auto* cFit = app.add_subcommand("fit", "exponent fit toward a critical value");
    add_mnm(cFit);
    std::string t0Arg, dirArg = "1";
    int ladder = 12;
    double eps0 = 0.1;
    bool csv = false;
    cFit->add_option("--s", sArg, "comma-separated s values (s0 entry ignored)")->required();
    int fitPow = 0;
    cFit->add_option("--t0", t0Arg, "critical value to approach")->required();
    cFit->add_option("--dir", dirArg, "approach direction (complex re:im)");
    cFit->add_option("--ladder", ladder, "ladder length");
    cFit->add_option("--eps0", eps0, "largest ladder offset");
    cFit->add_option("--i", fitPow, "z power of the fitted integrand");
    cFit->add_flag("--csv", csv, "emit the ladder as CSV only");

    // ---- monodromy
    auto* cMono = app.add_subcommand("monodromy", "transport around a critical value");
    add_mnm(cMono);
    std::string aroundArg, baseArg;
    double radius = 0.1;
    cMono->add_option("--s", sArg, "comma-separated s values (s0 entry ignored)")->required();
    cMono->add_option("--around", aroundArg, "loop center t0")->required();
    cMono->add_option("--radius", radius, "loop radius");
    cMono->add_option("--base", baseArg, "base point (default t0 + 3 radius)");

    // ---- verify
    auto* cVerify = app.add_subcommand("verify", "run acceptance criteria");
    std::string suite = "all";
    cVerify->add_option("--suite", suite, "criterion suite name or 'all'");

    try {
        app.parse(argc, argv);
        if (*cSystem) {
            ConnectionSystem cs = derive_connection(mu, nu, m);
            if (sysJson)
                emit(to_json(cs), "system", seed);
            else
                std::cout << connection_text(cs);
            return 0;
        }
        if (*cStrata) {
            auto toks = split_list(pointArg);
            bool flt = false;
            for (const auto& t : toks) flt = flt || looks_float(t);
            StratumLabel lab;
            if (flt) {
                std::vector<Cx> pt;
                for (const auto& t : toks) pt.push_back(parse_complex(t));
                lab = stratum_of(mu, pt);
            } else {
                std::vector<Rational> pt;
                for (const auto& t : toks) pt.push_back(parse_rational(t));
                lab = stratum_of(mu, pt);
            }
            emit(to_json(lab), "strata", seed);
            return 0;
        }
        if (*cOperator) {
            FuchsOperator op;
            if (shifted) {
                if (x0Arg.empty() || specializeArg.empty())
                    throw std::invalid_argument("shifted operator needs --x0 and --specialize");
                ConnectionSystem scs = derive_shifted_connection(
                    mu, nu, m, kshift, parse_rational(x0Arg), parse_rationals(specializeArg));
                op = build_shifted_annihilator(scs);
            } else {
                ConnectionSystem cs = derive_connection(mu, nu, m);
                op = build_annihilator(cs);
                if (!specializeArg.empty()) {
                    op.body = op.body.specialize_sprime(parse_rationals(specializeArg));
                    op.leading = op.body.coeff(-1, op.order);
                    op.sprime_specialized = true;
                    op.sprime = parse_rationals(specializeArg);
                }
            }
            emit(to_json(op), "operator", seed);
            return 0;
        }
        if (*cExp) {
            OpFamily fam;
            if (familyArg == "4.1") fam = OpFamily::F41;
            else if (familyArg == "4.2") fam = OpFamily::F42;
            else if (familyArg == "4.3e") fam = OpFamily::F43Even;
            else if (familyArg == "4.3o") fam = OpFamily::F43Odd;
            else throw std::invalid_argument("unknown family: " + familyArg);
            SingPoint pt;
            if (singArg == "omega") pt = SingPoint::RootOfUnity;
            else if (singArg == "zero") pt = SingPoint::Zero;
            else if (singArg == "inf") pt = SingPoint::Infinity;
            else throw std::invalid_argument("unknown point: " + singArg);
            ExponentSet e = exponents_closed_form(mu, nu, m, kshift, fam, pt);
            Json j = to_json(e);
            if (computed) {
                DiffOp op;
                if (fam == OpFamily::F41) op = family_41(mu, nu, m);
                else if (fam == OpFamily::F42) op = family_42(mu, nu, m, kshift);
                else op = family_43(mu, nu, m, kshift, fam == OpFamily::F43Odd, rat(1), true);
                DeterminingEquation de;
                if (pt == SingPoint::Zero) de = indicial_polynomial(op, 0);
                else if (pt == SingPoint::Infinity) de = indicial_at_infinity(op);
                else de = indicial_polynomial(op, 1);
                j["computed"] = to_json(de);
            }
            emit(j, "exponents", seed);
            return 0;
        }
        if (*cIso) {
            std::ifstream in(samplesFile);
            if (!in) throw std::invalid_argument("cannot open " + samplesFile);
            Json data = Json::parse(in);
            std::vector<std::vector<Rational>> pts;
            for (const auto& row : data) {
                std::vector<Rational> p;
                for (const auto& v : row) p.push_back(parse_rational(v.get<std::string>()));
                pts.push_back(p);
            }
            IsoReport rep = check_isomonodromy_factorization(mu, nu, m, pts, strk);
            emit(to_json(rep), "isocheck", seed);
            return rep.exponents_agree && rep.all_vanishing_ok ? 0 : 1;
        }
        if (*cBounds) {
            BoundQuery q;
            q.mu = mu;
            q.nu = nu;
            q.m = m;
            q.K = K;
            q.k1 = k1;
            q.point = (ptype == "regular") ? PointType::Regular : PointType::Branch;
            BoundResult res = zero_bound(q);
            emit(to_json(res, q), "bounds", seed);
            return 0;
        }
        if (*cPeriods || *cResidual || *cFit || *cMono) {
            CurveConfig cfg;
            cfg.mu = mu;
            cfg.nu = nu;
            cfg.m = m;
            cfg.s = parse_complexes(sArg);
            if (static_cast<int>(cfg.s.size()) != mu)
                throw std::invalid_argument("--s must supply mu values");
            QuadOptions qo;
            if (tol_override > 0) qo.tol = tol_override;

            if (*cPeriods) {
                CyclePath cyc;
                if (!cycleArg.empty()) {
                    auto ab = split_list(cycleArg);
                    cyc.a = std::stoi(ab.at(0));
                    cyc.b = std::stoi(ab.at(1));
                } else {
                    cyc.a = 0;
                    cyc.b = 1;
                }
                cyc.kind = poch ? CyclePath::Pochhammer : CyclePath::Segment;
                PeriodSample p = period(cfg, cyc, ipow, lshift, qo);
                Json j = to_json(p);
                FiberRoots fib = roots_of_fiber(cfg);
                Json roots = Json::array();
                for (const auto& z : fib.roots) roots.push_back(json_complex(z));
                j["fiber_roots"] = roots;
                emit(j, "periods", seed);
                return 0;
            }
            if (*cResidual) {
                ConnectionSystem cs = derive_connection(mu, nu, m);
                FiberRoots fib = roots_of_fiber(cfg);
                CyclePath cyc;
                if (!cycleArg.empty()) {
                    auto ab = split_list(cycleArg);
                    cyc.a = std::stoi(ab.at(0));
                    cyc.b = std::stoi(ab.at(1));
                } else {
                    double bestScore = -1;
                    for (int a = 0; a < (int)fib.roots.size(); ++a)
                        for (int b = a + 1; b < (int)fib.roots.size(); ++b) {
                            double gap = std::abs(fib.roots[a] - fib.roots[b]);
                            if (gap < 1e-9) continue;
                            double clear = 1e300;
                            for (int j = 0; j < (int)fib.roots.size(); ++j) {
                                if (j == a || j == b) continue;
                                clear = std::min(clear,
                                                 std::abs(fib.roots[j] - fib.roots[a]) / gap);
                            }
                            if (clear > bestScore) {
                                bestScore = clear;
                                cyc.a = a;
                                cyc.b = b;
                            }
                        }
                }
                double res = connection_residual(cfg, cs, cyc, qo);
                Json j;
                j["formula"] = "connection-residual";
                j["residual"] = fmt_double(res);
                j["condS"] = fmt_double(condition_number_S(cfg, cs));
                j["cycle"] = Json{{"a", cyc.a}, {"b", cyc.b}};
                emit(j, "residual", seed);
                return 0;
            }
            if (*cFit) {
                FitOptions fo;
                fo.eps0 = eps0;
                fo.ladder = ladder;
                fo.i = fitPow;
                fo.quad = qo;
                FitResult fres = fit_exponent(cfg, parse_complex(t0Arg), parse_complex(dirArg), fo);
                if (csv) {
                    std::cout << "eps,abs_vanishing,abs_dual\n";
                    for (const auto& row : fres.ladder)
                        std::cout << fmt_double(row[0]) << "," << fmt_double(row[1]) << ","
                                  << fmt_double(row[2]) << "\n";
                } else {
                    emit(to_json(fres), "fit", seed);
                }
                return 0;
            }
            // monodromy
            ConnectionSystem cs = derive_connection(mu, nu, m);
            Cx t0 = parse_complex(aroundArg);
            Cx base = baseArg.empty() ? t0 + Cx(3 * radius, 0.0) : parse_complex(baseArg);
            Eigen::MatrixXcd M = monodromy(cs, cfg, t0, radius, base);
            Json j;
            j["formula"] = "picard-lefschetz-monodromy";
            j["around"] = json_complex(t0);
            j["radius"] = fmt_double(radius);
            j["base"] = json_complex(base);
            j["matrix"] = json_matrix(M);
            Json ev = Json::array();
            for (const auto& z : sorted_eigenvalues(M)) ev.push_back(json_complex(z));
            j["eigenvalues"] = ev;
            emit(j, "monodromy", seed);
            return 0;
        }
        if (*cVerify) {
            std::vector<int> ids;
            if (suite != "all") {
                int id = suite_id(suite);
                if (id == 0) throw std::invalid_argument("unknown suite: " + suite);
                ids.push_back(id);
            }
            auto results = run_acceptance(ids, seed);
            bool all = true;
            for (const auto& r : results) {
                std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name
                          << " -- " << r.detail << " [" << fmt_double(r.seconds) << "s]\n";
                all = all && r.pass;
            }
            return all ? 0 : 1;
        }
        std::cout << app.help();
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    } catch (const std::exception& e) {
        Json j = json_header("error", seed);
        j["error"] = e.what();
        std::cerr << j.dump(2) << "\n";
        return 1;
    }
}
