#include "toric/quat.hpp"

namespace toric {

QuatAlgebra::QuatAlgebra(const QuadAlgebra& L, Padic gamma) : L_(&L), gamma_(gamma) {
    require(L.is_field(), errc::domain_violation, "the pair model needs a field L");
    require(!gamma.is_zero(), errc::zero_input, "j^2 must be nonzero");
    // matrix algebra iff gamma is a norm from L
    int h = hilbert_symbol(gamma_, L.D());
    eps_ = h;
    epsBL_ = ((gamma_.val() % 2) + 2) % 2;
    int expected = eps_ == 1 ? 0 : 2 - L.e();
    require(epsBL_ == expected, errc::domain_violation,
            "gamma is not normalized: v(gamma) must equal eps_{B,L}");
}

QuatAlgebra QuatAlgebra::matrix_side(const QuadAlgebra& L) {
    return QuatAlgebra(L, Padic::of(L.ctx(), 1));
}

QuatAlgebra QuatAlgebra::division_side(const QuadAlgebra& L) {
    const Context& ctx = L.ctx();
    if (L.e() == 1) return QuatAlgebra(L, Padic::of(ctx, ctx.p()));
    // ramified L: any unit outside Nm(L^x); a non-square unit works
    Padic g = Padic::of(ctx, ctx.nonresidue());
    if (hilbert_symbol(g, L.D()) == 1) g = g * Padic::of(ctx, ctx.nonresidue());
    return QuatAlgebra(L, g);
}

QuatElem QuatAlgebra::elem(QuadElem x, QuadElem y) const { return QuatElem(*this, x, y); }
QuatElem QuatAlgebra::from_L(QuadElem x) const { return QuatElem(*this, x, L_->zero()); }
QuatElem QuatAlgebra::scalar(Padic a) const { return from_L(L_->from_base(a)); }
QuatElem QuatAlgebra::zero() const { return from_L(L_->zero()); }
QuatElem QuatAlgebra::one() const { return from_L(L_->one()); }
QuatElem QuatAlgebra::j() const { return QuatElem(*this, L_->zero(), L_->one()); }

QuatElem QuatElem::operator+(const QuatElem& o) const { return QuatElem(*B_, x_ + o.x_, y_ + o.y_); }
QuatElem QuatElem::operator-(const QuatElem& o) const { return QuatElem(*B_, x_ - o.x_, y_ - o.y_); }
QuatElem QuatElem::operator-() const { return QuatElem(*B_, -x_, -y_); }

QuatElem QuatElem::operator*(const QuatElem& o) const {
    // (x1 + y1 j)(x2 + y2 j) = (x1 x2 + gamma y1 conj(y2)) + (x1 y2 + y1 conj(x2)) j
    QuadElem g = B_->L().from_base(B_->gamma());
    return QuatElem(*B_, x_ * o.x_ + g * (y_ * o.y_.conj()), x_ * o.y_ + y_ * o.x_.conj());
}

QuatElem QuatElem::conj() const { return QuatElem(*B_, x_.conj(), -y_); }

Padic QuatElem::norm() const { return x_.norm() - B_->gamma() * y_.norm(); }

Padic QuatElem::trace() const { return x_.trace(); }

QuatElem QuatElem::inv() const {
    Padic n = norm();
    require(!n.is_zero(), errc::non_invertible, "non-invertible quaternion");
    QuatElem c = conj();
    QuadElem ni = B_->L().from_base(n.inv());
    return QuatElem(*B_, c.x() * ni, c.y() * ni);
}

std::string QuatElem::str() const { return x_.str() + " + " + y_.str() + " j"; }

QuatElem commutator(const QuatElem& a, const QuatElem& b) { return a * b - b * a; }

Phase pairing_phase(const QuatElem& a, const QuatElem& b) { return psi_eval((a * b).trace()); }

QuatElem quat_exp(const QuatElem& x) {
    const QuatAlgebra& B = x.algebra();
    if (x.is_zero()) return B.one();
    require(semi_valuation2(x) >= 1, errc::domain_violation, "quat_exp needs nu(x) > 0");
    const Context& ctx = B.ctx();
    QuatElem acc = B.one();
    QuatElem term = B.one();
    int kmax = 4 * ctx.N() + 10;
    for (int k = 1; k <= kmax; ++k) {
        term = term * x;
        QuadElem kk = B.L().from_base(Padic::of(ctx, k));
        term = B.elem(term.x() / kk, term.y() / kk);
        acc = acc + term;
    }
    return acc;
}

i64 semi_valuation2(const QuatElem& g) {
    require(!g.is_zero(), errc::zero_input, "semi-valuation of zero");
    const QuadAlgebra& L = g.algebra().L();
    i64 vg = (i64)g.algebra().gamma().val() * L.e();  // v_L(gamma)
    i64 best = INT64_MAX;
    if (!g.x().is_zero()) best = std::min(best, 2LL * g.x().vE());
    if (!g.y().is_zero()) best = std::min(best, 2LL * g.y().vE() + vg);
    return best;
}

bool lattice_membership2(const QuatElem& g, i64 n2) {
    if (g.is_zero()) return true;
    return semi_valuation2(g) >= n2;
}

bool subgroup_membership2(const QuatElem& g, i64 n2) {
    return lattice_membership2(g - g.algebra().one(), n2);
}

std::pair<QuadElem, QuadElem> orthogonal_decompose(const QuatElem& g) {
    return {g.x(), g.y()};
}

QuatElem TorusEmbedding::embed(const QuadElem& e) const {
    const QuatAlgebra& B = beta.algebra();
    if (e.algebra().kind() == QuadKind::split) {
        // pair coordinates -> a + b beta with beta^2 = 1
        Padic two = Padic::of(B.ctx(), 2);
        Padic a = (e.a() + e.b()) / two;
        Padic b = (e.a() - e.b()) / two;
        return B.scalar(a) + B.scalar(b) * beta;
    }
    return B.scalar(e.a()) + B.scalar(e.b()) * beta;
}

RelativeParts decompose_relative(const QuatElem& g, const QuatElem& beta, const Padic& beta_sq) {
    // Gram system in the basis {1, beta} with Tr(beta) = 0:
    // <g,1> = 2u, <g,beta> = 2 w beta^2
    require(!beta_sq.is_zero(), errc::degenerate_gram, "central torus generator");
    const Context& ctx = g.algebra().ctx();
    Padic two = Padic::of(ctx, 2);
    RelativeParts parts;
    parts.u = g.trace() / two;
    parts.w = (g * beta).trace() / (two * beta_sq);
    QuatElem proj = g.algebra().scalar(parts.u) + g.algebra().scalar(parts.w) * beta;
    parts.residual = g - proj;
    return parts;
}

std::optional<TorusEmbedding> embed_second_torus(const QuadAlgebra& E, const QuatAlgebra& B) {
    const Context& ctx = B.ctx();
    const QuadAlgebra& L = B.L();
    if (E.kind() == QuadKind::split && B.eps() == -1) return std::nullopt;
    TorusEmbedding emb;
    emb.E = &E;
    if (E.is_field() && E.kind() == L.kind()) {
        Padic ratio = E.D() / L.D();
        if (is_square(ratio)) {
            // in-torus: beta = s sqrt(D_L) with s^2 = D_E / D_L
            Padic s = padic_sqrt(ratio);
            emb.beta = B.from_L(L.elem(Padic::zero(ctx), s));
            emb.jE = B.j();
            emb.gammaE = B.gamma();
            emb.in_torus = true;
            return emb;
        }
    }
    if (E.kind() == QuadKind::split) {
        // beta^2 = 1: solve s^2 D_L + gamma Nm(l1) = 1 the same way
    }
    // solve l0^2 + gamma Nm(l1) = D_E with l0 = s sqrt(D_L) imaginary:
    // s^2 D_L + gamma Nm(l1) = D_E
    Padic target = E.is_field() ? E.D() : Padic::of(ctx, 1);
    for (int vs = 0; vs <= 2; ++vs) {
        for (i64 su = 0; su < ctx.p(); ++su) {
            Padic s = su == 0 ? Padic::zero(ctx) : teichmuller(ctx, su).shift(vs);
            Padic rhs = s.is_zero() ? target : target - s * s * L.D();
            if (rhs.is_zero()) continue;
            Padic want = rhs / B.gamma();
            // norm equation Nm(l1) = want over L: try l1 = a + b sqrt(D_L),
            // a^2 - b^2 D_L = want; sweep b classes, Hensel the square root
            for (int vb = 0; vb <= 2; ++vb) {
                for (i64 bu = 0; bu < ctx.p(); ++bu) {
                    Padic b = bu == 0 ? Padic::zero(ctx) : teichmuller(ctx, bu).shift(vb);
                    Padic a2 = b.is_zero() ? want : want + b * b * L.D();
                    if (a2.is_zero()) continue;
                    if (!is_square(a2)) continue;
                    Padic a = padic_sqrt(a2);
                    QuadElem l1 = L.elem(a, b);
                    QuatElem beta = B.elem(L.elem(Padic::zero(ctx), s), l1);
                    emb.beta = beta;
                    // j_E = m + n j anticommuting with beta: n = 1,
                    // m = -gamma Tr(conj(l1)) / (2 l0), imaginary automatically
                    QuadElem l0 = L.elem(Padic::zero(ctx), s);
                    QuadElem n = L.one();
                    QuadElem m;
                    if (s.is_zero()) {
                        // beta in L^perp entirely: anything in L^0 anticommutes
                        // after pairing; take j_E = sqrt(D_L) * (l1 j) / ...
                        // simplest: j_E = sqrt(D_L) * beta / beta^2-part keeps
                        // E^perp; use m = sqrt(D_L), n = 0 direction instead:
                        emb.jE = B.from_L(L.sqrtD());
                    } else {
                        Padic tr = (n * l1.conj()).trace();
                        m = L.from_base(-(B.gamma() * tr)) / (l0 + l0);
                        emb.jE = B.elem(m, n);
                    }
                    // verify anti-commutation and trace-orthogonality
                    QuatElem anti = emb.jE * beta + beta * emb.jE;
                    require(anti.is_zero(), errc::internal, "embedding anti-commutation failed");
                    Padic g2x = (emb.jE * emb.jE).trace() / Padic::of(ctx, 2);
                    emb.gammaE = g2x;
                    emb.in_torus = false;
                    return emb;
                }
            }
        }
    }
    return std::nullopt;
}

Mat2 matrix_model(const QuatElem& g) {
    const QuatAlgebra& B = g.algebra();
    require(B.eps() == 1, errc::division_side_unsupported, "2x2 model needs the matrix side");
    require(B.gamma() == Padic::of(B.ctx(), 1), errc::domain_violation,
            "normalize gamma to 1 for the 2x2 model");
    const Padic& D = B.L().D();
    // x = a + b sqrt(D') -> [[a,b],[bD',a]], j -> diag(-1,1)
    const Padic &a = g.x().a(), &b = g.x().b();
    const Padic &c = g.y().a(), &d = g.y().b();
    return {a - c, b + d, (b - d) * D, a + c};
}

QuatElem from_matrix(const QuatAlgebra& B, const Mat2& m) {
    require(B.eps() == 1, errc::division_side_unsupported, "2x2 model needs the matrix side");
    const Context& ctx = B.ctx();
    const Padic& D = B.L().D();
    Padic two = Padic::of(ctx, 2);
    Padic a = (m[0] + m[3]) / two;
    Padic b = (m[1] + m[2] / D) / two;
    Padic c = (m[3] - m[0]) / two;
    Padic d = (m[1] - m[2] / D) / two;
    return B.elem(B.L().elem(a, b), B.L().elem(c, d));
}

Mat2 mat_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

Padic mat_det(const Mat2& a) { return a[0] * a[3] - a[1] * a[2]; }

Mat2 mat_inv(const Mat2& a) {
    Padic det = mat_det(a);
    require(!det.is_zero(), errc::non_invertible, "singular matrix");
    return {a[3] / det, -(a[1] / det), -(a[2] / det), a[0] / det};
}

}  // namespace toric
