#include <qtheta/registry.hpp>

namespace qtheta
{

namespace
{

Monomial M(Rational c, int q, int x = 0, int y = 0, int u = 0) { return Monomial(c, q, ExpVec{x, y, u, 0}); }
Monomial Q(int k) { return M(1, k); }

Param P(const Monomial &m) { return Param::mono(m); }
Param PS(const Monomial &m) { return Param::pair_sqrt(m); }

Expr mono(const Monomial &m) { return Expr::mono(m); }
Expr one() { return Expr::constant(Rational(1)); }
Expr pinf(const Monomial &m, int step = 1) { return Expr::poch_inf(m, step); }
Expr inv(const Expr &e) { return Expr::inv(e); }
Expr mul(std::vector<Expr> kids) { return Expr::mul(std::move(kids)); }
Expr add(std::vector<Expr> kids) { return Expr::add(std::move(kids)); }

Expr phi(const std::vector<Param> &up, const std::vector<Param> &low, const Monomial &arg, int base = 1)
{
    return Expr::sum(hypergeometric_spec(up, low, arg, base));
}

Expr ptheta(const Monomial &m) { return Expr::sum(partial_theta_spec(m)); }

// sum_{n>=1} (-1)^n q^binom(n,2) (x^n - y^n)/(x - y)
Expr L(const Monomial &x, const Monomial &y)
{
    SumSpec s;
    s.range = SumRange::from_one();
    s.alternating = true;
    s.quad = QuadExp::binom2();
    s.power = x;
    s.power2 = y;
    return Expr::sum(s);
}

// sum_{n>=1} (-1)^n q^binom(n,2) m^n
Expr tail_theta(const Monomial &m)
{
    SumSpec s = partial_theta_spec(m);
    s.range = SumRange::from_one();
    return Expr::sum(s);
}

// (q, x, y)_inf sum (xy/q)_2n q^n / (q, x, y, xy)_n
Expr warnaar_rhs(const Monomial &x, const Monomial &y)
{
    Monomial xy = x * y;
    SumSpec s;
    s.power = Q(1);
    s.factors = {num(xy.times_q(-1), {2, 0}), den(Q(1), {1, 0}), den(x, {1, 0}), den(y, {1, 0}), den(xy, {1, 0})};
    return mul({pinf(Q(1)), pinf(x), pinf(y), Expr::sum(s)});
}

// (q, qa, qb)_inf sum (ab)_2n q^n / (q, qa, qb, ab)_n
Expr R(const Monomial &a, const Monomial &b)
{
    Monomial ab = a * b;
    SumSpec s;
    s.power = Q(1);
    s.factors = {num(ab, {2, 0}), den(Q(1), {1, 0}), den(a.times_q(1), {1, 0}), den(b.times_q(1), {1, 0}),
                 den(ab, {1, 0})};
    return mul({pinf(Q(1)), pinf(a.times_q(1)), pinf(b.times_q(1)), Expr::sum(s)});
}

Identity make(std::string id, std::string title, std::string ref, Expr lhs, Expr rhs, Form form = Form::Stated,
              std::string provenance = {}, int order = 40)
{
    Identity i;
    i.id = std::move(id);
    i.title = std::move(title);
    i.reference = std::move(ref);
    i.lhs = std::move(lhs);
    i.rhs = std::move(rhs);
    i.form = form;
    i.provenance = std::move(provenance);
    i.default_order = order;
    return i;
}

} // namespace

std::vector<Identity> builtin_identities()
{
    const Monomial x = M(1, 0, 1), y = M(1, 0, 0, 1), u = M(1, 0, 0, 0, 1);
    const Monomial xy = x * y;
    std::vector<Identity> out;

    out.push_back(make("jtp", "complete theta function as a triple product", "Jacobi triple product",
                       Expr::sum(complete_theta_spec(x)), mul({pinf(Q(1)), pinf(x), pinf(M(1, 1, -1))})));

    {
        SumSpec s;
        s.range = SumRange::from_one();
        s.alternating = true;
        s.quad = QuadExp::binom2();
        s.weight = {-1, 2};
        out.push_back(make("jacobi-cube", "weighted theta sum equals minus the cube of the Euler product",
                           "Jacobi's identity for (q)_inf^3", Expr::sum(s),
                           Expr::neg(mul({pinf(Q(1)), pinf(Q(1)), pinf(Q(1))}))));
    }

    Expr warnaar_lhs = add({one(), tail_theta(x), tail_theta(y)});
    out.push_back(make("warnaar-sum", "sum of two partial theta series", "Warnaar's sum formula", warnaar_lhs,
                       warnaar_rhs(x, y), Form::Cleared, "(xy/q)_2n / (xy)_n cancelled with a peeled n = 0 term"));

    {
        SumSpec s;
        s.power = Q(1);
        s.factors = {den(Q(1), {1, 0}), den(x, {1, 0})};
        out.push_back(make("ptheta-heine", "partial theta series as (q,x)_inf 2phi1(0,0;x;q,q)",
                           "Heine's first transformation, limiting case", ptheta(x),
                           mul({pinf(Q(1)), pinf(x), Expr::sum(s)}), Form::Cleared,
                           "(q,x)_inf / (q,x)_n folded into per-term tails"));
    }

    Expr aw_rhs;
    {
        SumSpec s;
        s.power = Q(1);
        s.factors = {num(xy.times_q(-1), {2, 0}), den(Q(1), {1, 0}), den(x, {1, 0}), den(y, {1, 0}),
                     den(xy.times_q(-1), {1, 0})};
        aw_rhs = mul({pinf(Q(1)), pinf(x), pinf(y), Expr::sum(s)});
        out.push_back(make("aw-product", "product of two partial theta series", "Andrews-Warnaar product formula",
                           mul({ptheta(x), ptheta(y)}), aw_rhs, Form::Cleared,
                           "(xy/q)_2n / (xy/q)_n cancelled"));
    }

    {
        SumSpec sx, sy;
        sx.power = sy.power = Q(1);
        sx.factors = {den(Q(1), {1, 0}), den(x, {1, 0})};
        sy.factors = {den(Q(1), {1, 0}), den(y, {1, 0})};
        Expr lhs = mul({pinf(Q(1)), pinf(x), Expr::sum(sx), pinf(Q(1)), pinf(y), Expr::sum(sy)});
        Expr rhs = mul({pinf(Q(1)), pinf(x), pinf(y),
                        phi({PS(xy.times_q(-1)), PS(xy)}, {P(x), P(y), P(xy.times_q(-1))}, Q(1))});
        out.push_back(make("aw-4phi3", "product formula as a 4phi3 with paired square roots",
                           "Gasper-Rahman product formula, limiting case", lhs, rhs, Form::Cleared,
                           "paired square roots merged into (xy/q)_2n"));
    }

    {
        SumSpec s;
        s.power = Q(1);
        s.factors = {num(-x, {2, 0}), den(Q(2), {1, 0}, 2), den(x * x, {1, 0}, 2)};
        out.push_back(make("ptheta-quadratic", "partial theta series with base q^2 denominators",
                           "Andrews-Warnaar product formula at y = -q", ptheta(x),
                           mul({pinf(x), pinf(Q(1), 2), Expr::sum(s)}), Form::Cleared,
                           "(x^2;q^2)_n split as (x,-x)_n, then folded and cancelled"));
    }

    {
        Monomial x_q = x.times_q(-1);
        SumSpec s;
        s.power = Q(1);
        s.factors = {num((x * x).times_q(-2), {2, 0}), den(Q(1), {1, 0}), den(x, {1, 0}), den(x_q, {1, 0}),
                     den((x * x).times_q(-1), {1, 0})};
        Expr c = Expr::poch_fin(x_q, 1);
        out.push_back(make("ptheta-shift", "partial theta series from the sum formula at y = x/q",
                           "Warnaar's sum formula at y = x/q", mul({c, ptheta(x)}),
                           mul({c, pinf(Q(1)), pinf(x), pinf(x), Expr::sum(s)}), Form::Cleared,
                           "both sides times (1 - x/q)"));
    }

    {
        Monomial x2q = (x * x).times_q(-1);
        Expr lhs = phi({P(-x), P(-x.times_q(1))}, {P(x * x)}, Q(1), 2);
        Expr rhs = mul({pinf(x), pinf(Q(2), 2), phi({PS(x2q), P(-x.times_q(-1))}, {P(x), P(x2q)}, Q(1))});
        Identity i = make("quad-transform", "quadratic transformation of a base q^2 2phi1",
                          "quadratic 2phi1 to 3phi2 transformation", mul({pinf(x), pinf(x2q), lhs}),
                          mul({pinf(x), pinf(x2q), rhs}), Form::Cleared, "both sides times (x, x^2/q)_inf", 24);
        out.push_back(i);
    }

    Expr md_rhs;
    {
        SumSpec s;
        s.power = Q(1);
        s.factors = {num(xy, {2, 0}), den(Q(1), {1, 0}), den(x.times_q(1), {1, 0}), den(y.times_q(1), {1, 0}),
                     den(xy, {1, 0})};
        md_rhs = Expr::neg(mul({pinf(Q(1)), pinf(x.times_q(1)), pinf(y.times_q(1)), Expr::sum(s)}));
        out.push_back(make("main-difference", "difference of two partial theta series",
                           "difference formula for partial theta series", L(x, y), md_rhs, Form::Cleared,
                           "(xy)_2n / (xy)_n cancelled"));
    }

    {
        Monomial yx = y * x.inverse();
        Expr t1 = mul({pinf(Q(1)), pinf(y), pinf(M(1, 1, -1)),
                       phi({PS(yx), PS(yx.times_q(1))}, {P(y), P(M(1, 1, -1)), P(yx.times_q(1))}, Q(1))});
        Expr t2 = mul({Expr::constant(LaurentPoly::variable(1) - LaurentPoly::variable(0)), pinf(Q(1)),
                       pinf(x.times_q(1)), pinf(y.times_q(1)),
                       phi({PS(xy), PS(xy.times_q(1))}, {P(x.times_q(1)), P(y.times_q(1)), P(xy)}, Q(1))});
        out.push_back(make("sc-b1", "nonterminating Sears-Carlitz at b = 1, cleared of denominators",
                           "Gasper-Rahman nonterminating Sears-Carlitz transformation at b = 1",
                           mul({pinf(Q(1)), pinf(x), pinf(M(1, 1, -1))}), add({t1, t2})));
    }

    Monomial x1 = x.times_q(-1), y1 = y.times_q(-1), x2 = x.times_q(1), y2 = y.times_q(1);
    out.push_back(make("recurrence-xy", "sum side written through L at shifted arguments",
                       "recurrence from (x^(n+1) - y^(n+1))/(x - y)", warnaar_lhs,
                       add({Expr::neg(L(x1, y1)), mul({mono(xy.times_q(1)), L(x2, y2)})})));

    out.push_back(make("rhs-recurrence", "product side written through R at shifted arguments",
                       "Pochhammer difference recurrence", warnaar_rhs(x, y),
                       add({R(x1, y1), Expr::neg(mul({mono(xy.times_q(1)), R(x2, y2)}))})));

    Expr F = add({L(x, y), R(x, y)});
    out.push_back(make("qdiff-F", "F(x,y) = L(x,y) + R(x,y) vanishes", "q-difference equation, iterated", F,
                       Expr::constant(Rational(0))));
    {
        Expr F2 = add({L(x.times_q(2), y.times_q(2)), R(x.times_q(2), y.times_q(2))});
        out.push_back(make("qdiff-F-shift", "F(x,y) = q^3 x y F(xq^2, yq^2)", "q-difference equation", F,
                           mul({mono(xy.times_q(3)), F2})));
    }

    {
        SumSpec l;
        l.quad = {4, 0, 0};
        l.power = x;
        SumSpec r;
        r.power = Q(1);
        r.factors = {num(-x1, {2, 0}), den(Q(1), {1, 0}), den(-x1, {1, 0}), den(x.times_q(1), {1, 0}, 2)};
        out.push_back(make("double-square", "sum of q^(2n^2) x^n", "difference formula at y = -x, x -> sqrt(x/q)",
                           Expr::sum(l), mul({pinf(Q(1)), pinf(x.times_q(1), 2), Expr::sum(r)}), Form::Cleared,
                           "(xq;q^2)_inf folded, (-x/q)_2n / (-x/q)_n cancelled"));
    }

    {
        SumSpec l;
        l.quad = {1, 1, 0};
        out.push_back(make("gauss-sum", "sum of q^binom(n+1,2)", "Gauss' formula", Expr::sum(l),
                           mul({pinf(Q(2), 2), pinf(Q(2), 2), inv(pinf(Q(1)))})));
    }

    {
        Expr m = mul({pinf(Q(4), 4), pinf(Q(1)), pinf(Q(1))});
        Expr lhs = mul({Expr::poch_fin(Q(1), 1), pinf(Q(8), 8), pinf(Q(8), 8), pinf(Q(2), 2), inv(pinf(Q(4), 4)),
                        inv(pinf(Q(1))), inv(pinf(Q(1)))});
        Expr rhs = phi({P(M(-1, 2)), P(M(-1, 1))}, {P(Q(3))}, Q(1), 2);
        Identity i = make("q-kummer-cor", "product for 2phi1(-q^2,-q;q^3;q^2,q)", "q-Kummer identity, special case",
                          mul({m, lhs}), mul({m, rhs}), Form::Cleared, "both sides times (q^4;q^4)_inf (q)_inf^2");
        out.push_back(i);
    }

    {
        SumSpec l;
        l.range = SumRange::from_one();
        l.alternating = true;
        l.weight = {0, -1};
        l.quad = {1, 1, 0};
        SumSpec r;
        r.range = SumRange::from_one();
        r.power = Q(1);
        r.factors = {num(Q(1), {2, -1}), den(Q(1), {1, 0}), den(Q(1), {1, -1}), den(Q(1), {1, 0}),
                     den(Q(1), {1, 0})};
        Expr cube = mul({pinf(Q(1)), pinf(Q(1)), pinf(Q(1))});
        Expr lhs = mul({Expr::sum(l), inv(cube)});
        out.push_back(make("weighted-binom", "weighted theta sum over (q)_inf^3 as a Gaussian binomial series",
                           "difference formula at x = 1, y -> 1", mul({cube, lhs}), mul({cube, Expr::sum(r)}),
                           Form::Cleared, "both sides times (q)_inf^3"));
    }

    {
        Expr m = mul({pinf(Q(4), 8), pinf(M(-1, 2, 1), 4)});
        Expr lhs = phi({P(x.times_q(2)), P(x.times_q(6))}, {P((x * x).times_q(4))}, Q(4), 8);
        Expr rhs = mul({pinf(Q(1)), pinf(x.times_q(1), 2), inv(pinf(Q(4), 8)), inv(pinf(M(-1, 2, 1), 4)),
                        phi({PS(-x), PS(-x1)}, {P(-x1), PS(x.times_q(1))}, Q(1))});
        out.push_back(make("octonic", "octonic transformation", "octonic transformation formula", mul({m, lhs}),
                           mul({m, rhs}), Form::Cleared, "both sides times (q^4;q^8)_inf (-xq^2;q^4)_inf", 24));
    }

    {
        SumSpec l;
        l.range = {0, 10};
        l.power = u;
        l.factors = {num(x, {2, 0})};
        SumSpec r = l;
        r.factors = {num(PS(x), {1, 0}), num(PS(x.times_q(1)), {1, 0})};
        Identity i = make("lemma-poch-split", "(x)_2n as four square-root Pochhammers, n <= 10",
                          "square-root splitting of (x)_2n", Expr::sum(l), Expr::sum(r), Form::Stated,
                          "family indexed by the powers of u", 300);
        i.normalize = false;
        out.push_back(i);
    }

    {
        Monomial a = xy.times_q(-2), b = xy.times_q(-1);
        SumSpec l1, l2, r;
        l1.range = l2.range = r.range = {2, 10};
        l1.power = l2.power = r.power = u;
        l1.factors = {num(a, {2, 0}), den(a, {1, 0})};
        l2.factors = {num(b, {2, 0}), den(xy, {1, 0})};
        r.factors = {num(xy, {1, -2}, 1, {1, 0}), num(Q(0), {0, 1}, 1, {1, 0}), num(Q(0), {0, 1}, 1, {1, -1})};
        out.push_back(make("lemma-diff-poch", "Pochhammer difference lemma, 2 <= n <= 10",
                           "difference of (x1 y1)_2n/(x1 y1)_n and (xy/q)_2n/(xy)_n",
                           add({Expr::sum(l1), Expr::neg(Expr::sum(l2))}), mul({mono(b), Expr::sum(r)}),
                           Form::Cleared, "family indexed by the powers of u", 300));
    }

    {
        Expr lhs = phi({P(Q(2)), P(Q(3))}, {P(Q(5))}, x.times_q(1));
        Expr rhs = mul({pinf(Q(3)), pinf(x.times_q(3)), inv(pinf(Q(5))), inv(pinf(x.times_q(1))),
                        phi({P(Q(2)), P(x.times_q(1))}, {P(x.times_q(3))}, Q(3))});
        out.push_back(make("heine1-spec", "Heine's first transformation at a=q^2, b=q^3, c=q^5, z=qx",
                           "Heine's first transformation", lhs, rhs, Form::Specialization,
                           "a = q^2, b = q^3, c = q^5, z = qx", 24));
    }

    {
        Monomial qx = x.times_q(1), qox = M(1, 1, -1);
        Expr lhs_sums = mul({phi({P(Q(3)), P(Q(1))}, {P(Q(2))}, qx), phi({P(Q(3)), P(Q(2))}, {P(Q(3))}, qx)});
        Expr phi1 = phi({P(Q(3)), P(Q(1)), PS(Q(4)), PS(Q(5))},
                        {P(Q(3)), P(Q(2)), P(Q(4)), P(x.times_q(4)), P(qox)}, Q(1));
        Expr phi2 = phi({P(qx), P(x.times_q(3)), PS((x * x).times_q(4)), PS((x * x).times_q(5))},
                        {P(x.times_q(4)), P(x.times_q(2)), P(x.times_q(3)), P(qx), P((x * x).times_q(4))}, Q(1));
        Expr num1 = mul({pinf(x.times_q(4)), pinf(x.times_q(3))});
        Expr num2 = mul({pinf(Q(3)), pinf(Q(1)), pinf(x.times_q(4)), pinf(x.times_q(2)), pinf(x.times_q(3))});
        // Stated form, times (x)_inf.
        Expr s_t1 = mul({num1, inv(pinf(qx)), inv(pinf(x)), phi1});
        Expr s_t2 = mul({num2, inv(pinf(Q(2))), inv(pinf(Q(3))), inv(pinf(qx)), inv(pinf(qx)),
                         inv(pinf(M(1, 0, -1))), phi2});
        // (x)_inf / (1/x)_inf = -x (qx)_inf / (q/x)_inf
        Expr t1 = mul({num1, inv(pinf(qx)), phi1});
        Expr t2 = mul({mono(-x), num2, pinf(qx), inv(pinf(Q(2))), inv(pinf(Q(3))), inv(pinf(qx)), inv(pinf(qx)),
                       inv(pinf(qox)), phi2});
        Identity i = make("gr-product-spec", "Gasper-Rahman product formula at a=q^3, b=q, c=q^2, z=qx",
                          "Gasper-Rahman product formula", mul({pinf(x), lhs_sums}), add({t1, t2}),
                          Form::Specialization,
                          "a = q^3, b = q, c = q^2, z = qx; both sides times (x)_inf", 24);
        i.stated_lhs = i.lhs;
        i.stated_rhs = mul({pinf(x), add({s_t1, s_t2})});
        out.push_back(i);
    }

    {
        Monomial qx = x.times_q(1), q2x = x.times_q(2), qox = M(1, 1, -1);
        Expr lhs = phi({P(Q(2)), P(Q(1)), P(Q(1))}, {P(Q(2)), P(Q(2))}, qx);
        Expr phi1 = phi({PS(Q(2)), PS(Q(3)), P(Q(1))}, {P(Q(2)), P(Q(2)), P(q2x), P(qox)}, Q(1));
        Expr phi2 = phi({PS((x * x).times_q(2)), PS((x * x).times_q(3)), P(qx)},
                        {P(q2x), P(q2x), P(qx), P((x * x).times_q(2))}, Q(1));
        Expr s_t1 = mul({pinf(q2x), inv(pinf(x)), phi1});
        Expr s_t2 = mul({pinf(Q(2)), pinf(Q(1)), pinf(q2x), pinf(q2x), inv(pinf(Q(2))), inv(pinf(Q(2))),
                         inv(pinf(qx)), inv(pinf(M(1, 0, -1))), phi2});
        Expr t1 = mul({pinf(q2x), phi1});
        Expr t2 = mul({mono(-x), pinf(Q(1)), pinf(q2x), pinf(q2x), inv(pinf(Q(2))), inv(pinf(qox)), phi2});
        Identity i = make("sears-carlitz-nt-spec", "nonterminating Sears-Carlitz at a=q^2, b=c=q",
                          "Gasper-Rahman nonterminating Sears-Carlitz transformation", mul({pinf(x), lhs}),
                          add({t1, t2}), Form::Specialization, "a = q^2, b = c = q; both sides times (x)_inf", 24);
        i.stated_rhs = mul({pinf(x), add({s_t1, s_t2})});
        out.push_back(i);
    }

    {
        Monomial x2q = (x * x).times_q(-1);
        Expr lhs = phi({P(-x1), PS(x2q)}, {P(x2q), P(x)}, Q(1));
        Expr rhs = mul({pinf(M(-1, 1)), inv(pinf(x)), phi({P(-x1), P(-x)}, {P(x * x)}, Q(2), 2)});
        Expr m = mul({pinf(x), pinf(x), pinf(x2q)});
        out.push_back(make("jane-spec", "Jane's quadratic formula at a=-x/q, b=x/sqrt(q), z=-q",
                           "Jane's quadratic formula", mul({m, lhs}), mul({m, rhs}), Form::Specialization,
                           "a = -x/q, b = x/sqrt(q) (paired), z = -q; both sides times (x, x, x^2/q)_inf", 24));
    }

    return out;
}

} // namespace qtheta
