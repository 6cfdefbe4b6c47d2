#include "qpw/reps.hpp"

#include "qpw/errors.hpp"

namespace qpw {

namespace {

int dim(const Representation& m, int v) { return m.dims[v - 1]; }

Matrix block_rows(const std::vector<Matrix>& blocks, int cols) {
    Matrix out(0, cols);
    for (const Matrix& b : blocks) out = Matrix::vcat(out, b);
    return out;
}

Matrix block_cols(const std::vector<Matrix>& blocks, int rows) {
    Matrix out(rows, 0);
    for (const Matrix& b : blocks) out = Matrix::hcat(out, b);
    return out;
}

Matrix sub(const Matrix& a, int r0, int c0, int rows, int cols) {
    Matrix out(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out(i, j) = a(r0 + i, c0 + j);
    return out;
}

// Some P with P * basis = identity, for a matrix whose columns are independent.
Matrix retraction(const Matrix& basis) {
    Matrix x;
    if (!basis.transpose().solve(Matrix::identity(basis.cols()), x))
        fail("InternalError", "kernel basis is not independent");
    return x.transpose();
}

} // namespace

void validate_rep(const Quiver& q, const Representation& m) {
    if (static_cast<int>(m.dims.size()) != q.n())
        fail("ShapeMismatch", "expected " + std::to_string(q.n()) + " dimensions");
    for (int d : m.dims)
        if (d < 0) fail("ShapeMismatch", "negative dimension");
    for (const Arrow& a : q.arrows()) {
        auto it = m.mats.find(a.id);
        if (it == m.mats.end()) fail("ShapeMismatch", "no matrix for arrow " + a.id);
        if (it->second.rows() != dim(m, a.t) || it->second.cols() != dim(m, a.s))
            fail("ShapeMismatch", "matrix of " + a.id + " must be " + std::to_string(dim(m, a.t)) + "x" +
                                      std::to_string(dim(m, a.s)));
    }
    for (const auto& [id, mat] : m.mats)
        if (q.find(id) < 0) fail("ShapeMismatch", "matrix for unknown arrow " + id);
}

Representation zero_rep(const Quiver& q) {
    Representation m;
    m.dims.assign(q.n(), 0);
    for (const Arrow& a : q.arrows()) m.mats[a.id] = Matrix(0, 0);
    return m;
}

Representation simple_rep(const Quiver& q, int k) {
    Representation m;
    m.dims.assign(q.n(), 0);
    m.dims[k - 1] = 1;
    for (const Arrow& a : q.arrows()) m.mats[a.id] = Matrix(m.dims[a.t - 1], m.dims[a.s - 1]);
    return m;
}

Matrix evaluate_path(const Quiver& q, const Representation& m, const Path& p) {
    if (p.trivial()) return Matrix::identity(dim(m, p.idem));
    Matrix out = m.mats.at(q.arrow(p.arrows[0]).id);
    for (size_t i = 1; i < p.arrows.size(); ++i) out = out * m.mats.at(q.arrow(p.arrows[i]).id);
    return out;
}

std::map<std::pair<int, int>, Matrix> evaluate(const Quiver& q, const Representation& m, const NCElement& x) {
    std::map<std::pair<int, int>, Matrix> out;
    for (const auto& [p, c] : x.terms) {
        std::pair<int, int> st{source(q, p), target(q, p)};
        Matrix v = evaluate_path(q, m, p).scaled(c);
        auto it = out.find(st);
        if (it == out.end())
            out.emplace(st, std::move(v));
        else
            it->second = it->second + v;
    }
    return out;
}

Matrix evaluate_block(const Quiver& q, const Representation& m, const NCElement& x, int s, int t) {
    auto blocks = evaluate(q, m, x);
    auto it = blocks.find({s, t});
    return it == blocks.end() ? Matrix(dim(m, t), dim(m, s)) : it->second;
}

int nilpotency_index(const Quiver& q, const Representation& m) {
    // images of all paths of length L into each vertex, as column spans
    std::vector<Matrix> span(q.n());
    int total = 0;
    for (int v = 1; v <= q.n(); ++v) {
        span[v - 1] = Matrix::identity(dim(m, v));
        total += dim(m, v);
    }
    for (int len = 0; len <= total + 1; ++len) {
        bool zero = true;
        for (const Matrix& s : span)
            if (s.cols() > 0) zero = false;
        if (zero) return len;
        std::vector<Matrix> next(q.n());
        for (int v = 1; v <= q.n(); ++v) next[v - 1] = Matrix(dim(m, v), 0);
        for (const Arrow& a : q.arrows())
            next[a.t - 1] = Matrix::hcat(next[a.t - 1], m.mats.at(a.id) * span[a.s - 1]);
        for (Matrix& s : next) s = s.image();
        span = std::move(next);
    }
    return -1;
}

RelationReport check_relations(const QP& qp, const Representation& m) {
    validate_rep(qp.quiver, m);
    RelationReport r;
    for (int a = 0; a < qp.quiver.arrow_count(); ++a) {
        NCElement d = cyclic_derivative(qp.quiver, qp.potential, a);
        for (const auto& [st, mat] : evaluate(qp.quiver, m, d))
            if (!mat.is_zero()) {
                r.ok = false;
                r.failing.push_back(qp.quiver.arrow(a).id);
                break;
            }
    }
    return r;
}

RepMutation rep_mutate(const QP& qp, const Representation& m, int k) {
    const Quiver& q = qp.quiver;
    RelationReport before = check_relations(qp, m);
    if (!before.ok) fail("RelationCheckFailed", "input violates the derivative by " + before.failing.front());
    RepMutation out;
    out.premutated = premutate(qp, k);

    std::vector<int> ins, outs;
    for (int a = 0; a < q.arrow_count(); ++a) {
        if (q.arrow(a).t == k) ins.push_back(a);
        if (q.arrow(a).s == k) outs.push_back(a);
    }
    int dk = dim(m, k), din = 0, dout = 0;
    for (int a : ins) din += dim(m, q.arrow(a).s);
    for (int b : outs) dout += dim(m, q.arrow(b).t);

    std::vector<Matrix> alpha_blocks, beta_blocks;
    for (int a : ins) alpha_blocks.push_back(m.mats.at(q.arrow(a).id));
    for (int b : outs) beta_blocks.push_back(m.mats.at(q.arrow(b).id));
    Matrix alpha = block_cols(alpha_blocks, dk);  // M_in -> M(k)
    Matrix beta = block_rows(beta_blocks, dk);    // M(k) -> M_out
    Matrix gamma(din, dout);                      // M_out -> M_in
    int row = 0;
    for (int a : ins) {
        int col = 0;
        for (int b : outs) {
            NCElement d = second_cyclic_derivative(q, qp.potential, b, a);
            Matrix blk = evaluate_block(q, m, d, q.arrow(b).t, q.arrow(a).s);
            for (int i = 0; i < blk.rows(); ++i)
                for (int j = 0; j < blk.cols(); ++j) gamma(row + i, col + j) = blk(i, j);
            col += dim(m, q.arrow(b).t);
        }
        row += dim(m, q.arrow(a).s);
    }

    Matrix ker_alpha = alpha.kernel();  // din x ka
    Matrix ker_gamma = gamma.kernel();  // dout x kg
    int ka = ker_alpha.cols();
    Matrix beta_in_ker;  // coordinates of Im(beta) inside Ker(gamma)
    if (!ker_gamma.solve(beta, beta_in_ker))
        fail("RelationCheckFailed", "the image of beta is not inside the kernel of gamma");
    // rows spanning the annihilator of Im(beta): the projection onto Ker(gamma)/Im(beta)
    Matrix p = beta_in_ker.transpose().kernel().transpose();
    int qd = p.rows();
    Matrix p_gamma = retraction(ker_gamma);
    Matrix p_alpha = retraction(ker_alpha);

    Matrix new_alpha = Matrix::vcat(p * p_gamma, p_alpha * gamma).scaled(Scalar(-1));  // M_out -> new M(k)
    Matrix new_beta = Matrix::hcat(Matrix(din, qd), ker_alpha);                         // new M(k) -> M_in

    Representation& r = out.rep;
    r.dims = m.dims;
    r.dims[k - 1] = qd + ka;
    for (const Arrow& a : q.arrows())
        if (a.s != k && a.t != k) r.mats[a.id] = m.mats.at(a.id);
    for (int b : outs)
        for (int a : ins)
            r.mats["[" + q.arrow(b).id + "." + q.arrow(a).id + "]"] =
                m.mats.at(q.arrow(b).id) * m.mats.at(q.arrow(a).id);
    row = 0;
    for (int a : ins) {
        int d = dim(m, q.arrow(a).s);
        r.mats[q.arrow(a).id + "*"] = sub(new_beta, row, 0, d, qd + ka);
        row += d;
    }
    int col = 0;
    for (int b : outs) {
        int d = dim(m, q.arrow(b).t);
        r.mats[q.arrow(b).id + "*"] = sub(new_alpha, 0, col, qd + ka, d);
        col += d;
    }

    RelationReport after = check_relations(out.premutated, r);
    if (!after.ok) fail("RelationCheckFailed", "mutated representation violates the derivative by " + after.failing.front());
    return out;
}

Representation t2_witness() {
    auto mat = [](int rows, int cols, std::vector<long> entries) {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = Scalar(Rational(entries[i * cols + j]));
        return m;
    };
    Representation m;
    m.dims = {1, 2, 1, 1};
    m.mats["a1"] = mat(2, 1, {0, 0});
    m.mats["a2"] = mat(2, 1, {0, 1});
    m.mats["b1"] = mat(1, 1, {-1});
    m.mats["b2"] = mat(1, 1, {1});
    m.mats["c1"] = mat(1, 2, {1, 0});
    m.mats["c2"] = mat(1, 2, {1, 0});
    m.mats["d"] = mat(1, 1, {0});
    return m;
}

} // namespace qpw
