#include "sei/tableau.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace sei {

void RKTableau::validate() const {
    if (s < 1) throw std::invalid_argument("RKTableau: stage count must be >= 1");
    if (c.size() != static_cast<size_t>(s) || b.size() != static_cast<size_t>(s) ||
        A.size() != static_cast<size_t>(s) * s)
        throw std::invalid_argument("RKTableau: coefficient sizes inconsistent with stage count");
    for (double v : c)
        if (!std::isfinite(v)) throw std::invalid_argument("RKTableau: non-finite abscissa");
    for (double v : b)
        if (!std::isfinite(v)) throw std::invalid_argument("RKTableau: non-finite weight");
    for (double v : A)
        if (!std::isfinite(v)) throw std::invalid_argument("RKTableau: non-finite stage coefficient");
}

static void check_stage_index(const SEIMethod& m, int i, const char* who) {
    if (i < 1 || i > m.tableau.s)
        throw std::out_of_range(std::string(who) + ": stage index " + std::to_string(i) +
                                " out of range 1.." + std::to_string(m.tableau.s));
}

SquareMatrix sei_abar(const SEIMethod& m, int i, int j, const SquareMatrix& Z) {
    check_stage_index(m, i, "sei_abar");
    check_stage_index(m, j, "sei_abar");
    const RKTableau& t = m.tableau;
    return scale(t.a(i - 1, j - 1), expm(scale(t.c[i - 1] - t.c[j - 1], Z)));
}

SquareMatrix sei_bbar(const SEIMethod& m, int i, const SquareMatrix& Z) {
    check_stage_index(m, i, "sei_bbar");
    const RKTableau& t = m.tableau;
    return scale(t.b[i - 1], expm(scale(1.0 - t.c[i - 1], Z)));
}

static void finish(ConditionReport& r) {
    r.residual = 0.0;
    for (const auto& d : r.details)
        if (d.defect > r.residual) r.residual = d.defect;
}

ConditionReport check_rk_symmetry(const RKTableau& t) {
    t.validate();
    ConditionReport r;
    r.condition_name = "rk_symmetry";
    const int s = t.s;
    for (int i = 0; i < s; ++i) {
        const int ir = s - 1 - i;   // paper index s+1-i
        r.details.push_back({"c[" + std::to_string(i + 1) + "]", std::fabs(t.c[i] + t.c[ir] - 1.0)});
        r.details.push_back({"b[" + std::to_string(i + 1) + "]", std::fabs(t.b[i] - t.b[ir])});
        for (int j = 0; j < s; ++j) {
            const int jr = s - 1 - j;
            const double lhs = t.a(i, j);
            const double rhs = t.b[jr] - t.a(ir, jr);
            r.details.push_back({"a[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]",
                                 std::fabs(lhs - rhs)});
        }
    }
    finish(r);
    return r;
}

ConditionReport check_rk_symplecticity(const RKTableau& t) {
    t.validate();
    ConditionReport r;
    r.condition_name = "rk_symplecticity";
    for (int i = 0; i < t.s; ++i)
        for (int j = 0; j < t.s; ++j) {
            const double d = std::fabs(t.b[i] * t.b[j] - t.b[i] * t.a(i, j) - t.b[j] * t.a(j, i));
            r.details.push_back({"(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")", d});
        }
    finish(r);
    return r;
}

ConditionReport check_ei_symmetry(const SEIMethod& m, const SquareMatrix& Z) {
    m.tableau.validate();
    if (!is_finite(Z)) throw std::invalid_argument("check_ei_symmetry: non-finite sample");
    ConditionReport r;
    r.condition_name = "ei_symmetry";
    const RKTableau& t = m.tableau;
    const int s = t.s;
    const SquareMatrix Zn = scale(-1.0, Z);
    const SquareMatrix eZ = expm(Z);

    // abscissa condition first; the matrix families below assume it
    for (int i = 0; i < s; ++i)
        r.details.push_back({"c[" + std::to_string(i + 1) + "]",
                             std::fabs(t.c[i] + t.c[s - 1 - i] - 1.0)});
    for (int i = 1; i <= s; ++i) {
        const SquareMatrix lhs = sei_bbar(m, i, Z);
        const SquareMatrix rhs = mat_mul(eZ, sei_bbar(m, s + 1 - i, Zn));
        r.details.push_back({"bbar[" + std::to_string(i) + "]", inf_norm(sub(lhs, rhs))});
    }
    for (int i = 1; i <= s; ++i) {
        const SquareMatrix eciZ = expm(scale(t.c[i - 1], Z));
        for (int j = 1; j <= s; ++j) {
            const SquareMatrix lhs = sei_abar(m, i, j, Z);
            const SquareMatrix rhs =
                sub(mat_mul(eciZ, sei_bbar(m, s + 1 - j, Zn)), sei_abar(m, s + 1 - i, s + 1 - j, Zn));
            r.details.push_back({"abar[" + std::to_string(i) + "," + std::to_string(j) + "]",
                                 inf_norm(sub(lhs, rhs))});
        }
    }
    finish(r);
    return r;
}

static double frobenius_inner(const SquareMatrix& A, const SquareMatrix& B) {
    double s = 0.0;
    for (size_t k = 0; k < A.e.size(); ++k) s += A.e[k] * B.e[k];
    return s;
}

ConditionReport check_ei_symplecticity(const SEIMethod& m, const SquareMatrix& hM,
                                       const SquareMatrix& J) {
    m.tableau.validate();
    if (hM.d != J.d)
        throw std::invalid_argument("check_ei_symplecticity: hM and J dimensions differ");
    if (J.d % 2 != 0)
        throw std::invalid_argument("check_ei_symplecticity: odd dimension has no symplectic structure");
    if (inf_norm(add(J, transpose(J))) > 1e-14 * (1.0 + inf_norm(J)))
        throw std::invalid_argument("check_ei_symplecticity: J not antisymmetric");
    (void)lu_solve(J, identity(J.d));   // throws if J is singular

    ConditionReport r;
    r.condition_name = "ei_symplecticity";
    const RKTableau& t = m.tableau;
    const int s = t.s;
    const SquareMatrix S = expm(hM);
    const double jj = frobenius_inner(J, J);

    std::vector<SquareMatrix> SiInv, bbar, bbarT;
    for (int i = 0; i < s; ++i) {
        SiInv.push_back(expm(scale(-t.c[i], hM)));
        bbar.push_back(sei_bbar(m, i + 1, hM));
        bbarT.push_back(transpose(bbar.back()));
    }

    // first family: bbar_i^T J S S_i^{-1} and its counterpart both equal gamma_i J
    for (int i = 0; i < s; ++i) {
        const SquareMatrix X = mat_mul(bbarT[i], mat_mul(J, mat_mul(S, SiInv[i])));
        const double gamma = frobenius_inner(X, J) / jj;
        r.gammas.push_back(gamma);
        r.details.push_back({"gamma[" + std::to_string(i + 1) + "] fit",
                             inf_norm(sub(X, scale(gamma, J)))});
        const SquareMatrix Y =
            mat_mul(transpose(SiInv[i]), mat_mul(transpose(S), mat_mul(J, bbar[i])));
        r.details.push_back({"gamma[" + std::to_string(i + 1) + "] counterpart",
                             inf_norm(sub(Y, scale(gamma, J)))});
    }

    // second family, all stage pairs
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) {
            const SquareMatrix lhs = mat_mul(bbarT[i], mat_mul(J, bbar[j]));
            const SquareMatrix term1 = mat_mul(
                bbarT[i], mat_mul(J, mat_mul(S, mat_mul(SiInv[i], sei_abar(m, i + 1, j + 1, hM)))));
            const SquareMatrix term2 =
                mat_mul(transpose(sei_abar(m, j + 1, i + 1, hM)),
                        mat_mul(transpose(SiInv[j]), mat_mul(transpose(S), mat_mul(J, bbar[j]))));
            r.details.push_back({"pair(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                                 inf_norm(sub(lhs, add(term1, term2)))});
        }
    finish(r);
    return r;
}

ConditionReport check_order_conditions(const RKTableau& t, int p) {
    t.validate();
    if (p < 1 || p > 4)
        throw std::invalid_argument("check_order_conditions: order must be in 1..4, got " +
                                    std::to_string(p));
    ConditionReport r;
    r.condition_name = "order_p" + std::to_string(p);
    const int s = t.s;

    auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
        double acc = 0.0;
        for (int i = 0; i < s; ++i) acc += u[i] * v[i];
        return acc;
    };
    auto apply_a = [&](const std::vector<double>& v) {
        std::vector<double> w(s, 0.0);
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j) w[i] += t.a(i, j) * v[j];
        return w;
    };

    std::vector<double> one(s, 1.0), c2(s), c3(s);
    for (int i = 0; i < s; ++i) { c2[i] = t.c[i] * t.c[i]; c3[i] = c2[i] * t.c[i]; }
    const std::vector<double> Ac = apply_a(t.c);

    r.details.push_back({"sum b = 1", std::fabs(dot(t.b, one) - 1.0)});
    if (p >= 2) r.details.push_back({"sum b c = 1/2", std::fabs(dot(t.b, t.c) - 0.5)});
    if (p >= 3) {
        r.details.push_back({"sum b c^2 = 1/3", std::fabs(dot(t.b, c2) - 1.0 / 3.0)});
        r.details.push_back({"sum b A c = 1/6", std::fabs(dot(t.b, Ac) - 1.0 / 6.0)});
    }
    if (p >= 4) {
        std::vector<double> cAc(s);
        for (int i = 0; i < s; ++i) cAc[i] = t.c[i] * Ac[i];
        r.details.push_back({"sum b c^3 = 1/4", std::fabs(dot(t.b, c3) - 0.25)});
        r.details.push_back({"sum b c (A c) = 1/8", std::fabs(dot(t.b, cAc) - 0.125)});
        r.details.push_back({"sum b A c^2 = 1/12", std::fabs(dot(t.b, apply_a(c2)) - 1.0 / 12.0)});
        r.details.push_back({"sum b A A c = 1/24", std::fabs(dot(t.b, apply_a(Ac)) - 1.0 / 24.0)});
    }
    for (int i = 0; i < s; ++i) {
        double row = 0.0;
        for (int j = 0; j < s; ++j) row += t.a(i, j);
        r.details.push_back({"row sum " + std::to_string(i + 1), std::fabs(row - t.c[i])});
    }
    finish(r);
    return r;
}

static SEIMethod make_method(std::string name, RKTableau t, int order, bool classical) {
    t.validate();
    SEIMethod m;
    m.name = std::move(name);
    m.tableau = std::move(t);
    m.order = order;
    m.classical_rk = classical;
    const double res = check_order_conditions(m.tableau, order).residual;
    if (res > 1e-13)
        throw std::logic_error("builtin method " + m.name + " fails its stated order " +
                               std::to_string(order) + " (residual " + std::to_string(res) + ")");
    return m;
}

const std::vector<SEIMethod>& builtin_methods() {
    static const std::vector<SEIMethod> methods = [] {
        // implicit midpoint
        RKTableau mid;
        mid.s = 1;
        mid.c = {0.5};
        mid.b = {1.0};
        mid.A = {0.5};

        // 2-stage Gauss collocation
        const double sq3 = std::sqrt(3.0);
        RKTableau gauss;
        gauss.s = 2;
        gauss.c = {(3.0 - sq3) / 6.0, (3.0 + sq3) / 6.0};
        gauss.b = {0.5, 0.5};
        gauss.A = {0.25, (3.0 - 2.0 * sq3) / 12.0, (3.0 + 2.0 * sq3) / 12.0, 0.25};

        // triple-jump composition of the midpoint rule; the abscissae are the
        // running row sums of A: c = (b1/2, 1/2, 1 - b1/2)
        const double cr2 = std::cbrt(2.0);
        const double b1 = (4.0 + 2.0 * cr2 + cr2 * cr2) / 6.0;
        const double b2 = -(1.0 + 2.0 * cr2 + cr2 * cr2) / 3.0;
        RKTableau jump;
        jump.s = 3;
        jump.c = {b1 / 2.0, 0.5, 1.0 - b1 / 2.0};
        jump.b = {b1, b2, b1};
        jump.A = {b1 / 2.0, 0.0, 0.0, b1, b2 / 2.0, 0.0, b1, b2, b1 / 2.0};

        std::vector<SEIMethod> v;
        v.push_back(make_method("SSSEI1s2", mid, 2, false));
        v.push_back(make_method("SSSEI2s4", gauss, 4, false));
        v.push_back(make_method("SSSEI3s4", jump, 4, false));
        v.push_back(make_method("SSRK1s2", mid, 2, true));
        v.push_back(make_method("SSRK2s4", gauss, 4, true));
        v.push_back(make_method("SSRK3s4", jump, 4, true));
        return v;
    }();
    return methods;
}

const SEIMethod& find_method(const std::string& name) {
    for (const SEIMethod& m : builtin_methods())
        if (m.name == name) return m;
    throw std::invalid_argument("unknown method '" + name + "' (see list-methods)");
}

SquareMatrix canonical_j(int d) {
    if (d < 2 || d % 2 != 0)
        throw std::invalid_argument("canonical_j: dimension must be even and >= 2");
    SquareMatrix J(d);
    const int half = d / 2;
    for (int i = 0; i < half; ++i) {
        J(i, half + i) = 1.0;
        J(half + i, i) = -1.0;
    }
    return J;
}

SquareMatrix random_hamiltonian(int d, double norm_bound, std::mt19937& rng) {
    if (norm_bound <= 0.0)
        throw std::invalid_argument("random_hamiltonian: norm bound must be positive");
    const SquareMatrix J = canonical_j(d);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    SquareMatrix S(d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) S(i, j) = S(j, i) = uni(rng);
    SquareMatrix Z = mat_mul(J, S);
    const double n = inf_norm(Z);
    if (n == 0.0) return Z;   // measure-zero, but harmless
    return scale(norm_bound / n, Z);
}

std::string tableau_to_json(const SEIMethod& m) {
    nlohmann::json j;
    j["name"] = m.name;
    j["s"] = m.tableau.s;
    j["c"] = m.tableau.c;
    j["b"] = m.tableau.b;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.tableau.s; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < m.tableau.s; ++k) row.push_back(m.tableau.a(i, k));
        rows.push_back(row);
    }
    j["A"] = rows;
    return j.dump(2) + "\n";
}

SEIMethod tableau_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("tableau JSON: ") + e.what());
    }
    for (const char* key : {"name", "s", "c", "b", "A"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("tableau JSON: missing field '") + key + "'");

    SEIMethod m;
    m.name = j["name"].get<std::string>();
    RKTableau t;
    t.s = j["s"].get<int>();
    t.c = j["c"].get<std::vector<double>>();
    t.b = j["b"].get<std::vector<double>>();
    const auto& rows = j["A"];
    if (!rows.is_array() || rows.size() != static_cast<size_t>(t.s))
        throw std::invalid_argument("tableau JSON: A must be an s-by-s array of arrays");
    for (const auto& row : rows) {
        const auto vals = row.get<std::vector<double>>();
        if (vals.size() != static_cast<size_t>(t.s))
            throw std::invalid_argument("tableau JSON: A must be an s-by-s array of arrays");
        t.A.insert(t.A.end(), vals.begin(), vals.end());
    }
    t.validate();
    m.tableau = std::move(t);
    for (int p = 4; p >= 1; --p)
        if (check_order_conditions(m.tableau, p).residual <= 1e-13) { m.order = p; break; }
    return m;
}

}  // namespace sei
