#include "tensor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bergman::detail
{

Tensor::Tensor(int n_, std::vector<Slot> slots_, int prec) : n(n_), slots(std::move(slots_))
{
    std::size_t sz = 1;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        sz *= static_cast<std::size_t>(n);
    }
    c.assign(sz, Series(n, prec));
}

Tensor Tensor::scalar(const Series &s)
{
    Tensor t(s.dim(), {}, s.prec());
    t.c[0] = s;
    return t;
}

std::size_t Tensor::offset(std::span<const int> idx) const
{
    std::size_t k = 0;
    for (int v : idx) {
        k = k * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
    }
    return k;
}

void Tensor::unflatten(std::size_t k, std::vector<int> &idx) const
{
    idx.resize(slots.size());
    for (int s = rank() - 1; s >= 0; --s) {
        idx[static_cast<std::size_t>(s)] = static_cast<int>(k % static_cast<std::size_t>(n));
        k /= static_cast<std::size_t>(n);
    }
}

int Tensor::prec() const
{
    int p = kExact;
    for (const auto &s : c) {
        p = std::min(p, s.prec());
    }
    return p;
}

Tensor Tensor::truncated(int d) const
{
    Tensor t(*this);
    for (auto &s : t.c) {
        s = s.truncated(d);
    }
    return t;
}

Tensor Tensor::conj() const
{
    Tensor t(*this);
    for (auto &s : t.slots) {
        s = s == Slot::holo ? Slot::anti : Slot::holo;
    }
    for (auto &s : t.c) {
        s = s.conj();
    }
    return t;
}

Tensor &Tensor::operator+=(const Tensor &o)
{
    if (o.slots != slots) {
        throw std::invalid_argument("Tensor: slot mismatch");
    }
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] += o.c[k];
    }
    return *this;
}

Tensor &Tensor::operator*=(const Rational &r)
{
    for (auto &s : c) {
        s *= r;
    }
    return *this;
}

namespace
{

using Mat = std::vector<Series>;

Mat mat_mul(const Mat &a, const Mat &b, int n, int cap)
{
    Mat out(static_cast<std::size_t>(n * n), Series(a[0].dim(), cap));
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Series &aik = a[static_cast<std::size_t>(i * n + k)];
            if (aik.is_zero()) {
                continue;
            }
            for (int j = 0; j < n; ++j) {
                out[static_cast<std::size_t>(i * n + j)] +=
                    Series::multiply(aik, b[static_cast<std::size_t>(k * n + j)], cap);
            }
        }
    }
    return out;
}

// Inverse of a constant complex matrix by Gauss-Jordan.
std::vector<QComplex> invert(std::vector<QComplex> a, int n)
{
    std::vector<QComplex> inv(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
        inv[static_cast<std::size_t>(i * n + i)] = QComplex(1);
    }
    auto at = [n](std::vector<QComplex> &m, int i, int j) -> QComplex & {
        return m[static_cast<std::size_t>(i * n + j)];
    };
    for (int col = 0; col < n; ++col) {
        int piv = col;
        while (piv < n && at(a, piv, col).is_zero()) {
            ++piv;
        }
        if (piv == n) {
            throw std::domain_error("metric is degenerate at the origin");
        }
        for (int j = 0; j < n; ++j) {
            std::swap(at(a, col, j), at(a, piv, j));
            std::swap(at(inv, col, j), at(inv, piv, j));
        }
        const QComplex p = at(a, col, col);
        for (int j = 0; j < n; ++j) {
            at(a, col, j) /= p;
            at(inv, col, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || at(a, i, col).is_zero()) {
                continue;
            }
            const QComplex f = at(a, i, col);
            for (int j = 0; j < n; ++j) {
                at(a, i, j) -= f * at(a, col, j);
                at(inv, i, j) -= f * at(inv, col, j);
            }
        }
    }
    return inv;
}

} // namespace

Geometry::Geometry(const Series &potential, int ginv_prec, int gamma_prec) : n_(potential.dim())
{
    const int n = n_;
    g_.resize(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i) {
        const Series di = potential.d(i);
        for (int j = 0; j < n; ++j) {
            g_[idx(i, j)] = di.dbar(j);
        }
    }
    const int gp = g_[0].prec();
    ginv_prec = std::min(ginv_prec, gp);
    gamma_prec = std::min(gamma_prec, gp - 1);

    // G = G0 (I + G0^{-1} N); G^{-1} = sum_k (-G0^{-1} N)^k G0^{-1}.
    std::vector<QComplex> g0(static_cast<std::size_t>(n * n));
    for (std::size_t k = 0; k < g0.size(); ++k) {
        g0[k] = g_[k].at_origin();
    }
    const auto g0inv = invert(g0, n);
    Mat c0(static_cast<std::size_t>(n * n), Series(n, ginv_prec));
    Mat nmat(static_cast<std::size_t>(n * n), Series(n, ginv_prec));
    for (std::size_t k = 0; k < g0.size(); ++k) {
        c0[k] = Series::constant(n, g0inv[k], ginv_prec);
        nmat[k] = g_[k].truncated(ginv_prec) - Series::constant(n, g0[k], ginv_prec);
    }
    Mat step = mat_mul(c0, nmat, n, ginv_prec);
    for (auto &s : step) {
        s = -s;
    }
    Mat inv = c0;
    Mat term = c0;
    for (int k = 1; k <= ginv_prec; ++k) {
        term = mat_mul(step, term, n, ginv_prec);
        bool zero = true;
        for (std::size_t q = 0; q < term.size(); ++q) {
            inv[q] += term[q];
            zero = zero && term[q].is_zero();
        }
        if (zero) {
            break;
        }
    }
    ginv_.resize(inv.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            ginv_[idx(i, j)] = inv[idx(j, i)];
        }
    }

    gamma_.assign(static_cast<std::size_t>(n * n * n), Series(n, gamma_prec));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int s = 0; s < n; ++s) {
                const Series dg = g_[idx(i, s)].d(j).truncated(gamma_prec);
                if (dg.is_zero()) {
                    continue;
                }
                for (int k = 0; k < n; ++k) {
                    gamma_[idx(k, i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] +=
                        Series::multiply(ginv_[idx(k, s)], dg, gamma_prec);
                }
            }
        }
    }
    gamma_bar_.resize(gamma_.size());
    for (std::size_t k = 0; k < gamma_.size(); ++k) {
        gamma_bar_[k] = gamma_[k].conj();
    }
}

namespace
{

Series det_series(const std::vector<Series> &m, int n, int prec)
{
    if (n == 1) {
        return m[0].truncated(prec);
    }
    // Laplace expansion along the first row.
    Series out(m[0].dim(), prec);
    for (int j = 0; j < n; ++j) {
        std::vector<Series> minor;
        for (int r = 1; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                if (c != j) {
                    minor.push_back(m[static_cast<std::size_t>(r * n + c)]);
                }
            }
        }
        Series t = Series::multiply(m[static_cast<std::size_t>(j)], det_series(minor, n - 1, prec), prec);
        if (j % 2 == 1) {
            t = -t;
        }
        out += t;
    }
    return out;
}

} // namespace

Series Geometry::log_det(int prec) const
{
    Series det = det_series(g_, n_, prec);
    const QComplex d0 = det.at_origin();
    if (d0.is_zero()) {
        throw std::domain_error("metric is degenerate at the origin");
    }
    det *= QComplex(1) / d0;
    det -= Series::constant(n_, QComplex(1));
    return log1p_series(det, std::min(prec, det.prec()));
}

Tensor Geometry::riemann(int cap) const
{
    const int n = n_;
    Tensor r(n, {Slot::holo, Slot::anti, Slot::holo, Slot::anti}, cap);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Series &gij = g(i, j);
            for (int k = 0; k < n; ++k) {
                const Series dk = gij.d(k);
                for (int l = 0; l < n; ++l) {
                    Series v = dk.dbar(l).truncated(cap);
                    for (int p = 0; p < n; ++p) {
                        const Series &gam = gamma(p, i, k);
                        if (gam.is_zero()) {
                            continue;
                        }
                        v -= Series::multiply(gam, g(p, j).dbar(l), cap);
                    }
                    r.at({i, j, k, l}) = std::move(v);
                }
            }
        }
    }
    return r;
}

Tensor Geometry::covariant(const Tensor &t, Slot dir) const
{
    const int n = n_;
    auto slots = t.slots;
    slots.push_back(dir);
    Tensor out(n, slots, t.prec() - 1);
    std::vector<int> idx;
    std::vector<int> src;
    for (std::size_t k = 0; k < t.size(); ++k) {
        t.unflatten(k, idx);
        for (int p = 0; p < n; ++p) {
            Series v = dir == Slot::holo ? t.c[k].d(p) : t.c[k].dbar(p);
            const int cap = v.prec();
            for (int s = 0; s < t.rank(); ++s) {
                if (t.slots[static_cast<std::size_t>(s)] != dir) {
                    continue;
                }
                src = idx;
                for (int r = 0; r < n; ++r) {
                    src[static_cast<std::size_t>(s)] = r;
                    const Series &comp = t.at(src);
                    if (comp.is_zero()) {
                        continue;
                    }
                    const Series &gam = dir == Slot::holo ? gamma(r, idx[static_cast<std::size_t>(s)], p)
                                                          : gamma_bar(r, idx[static_cast<std::size_t>(s)], p);
                    if (gam.is_zero()) {
                        continue;
                    }
                    v -= Series::multiply(gam, comp, cap);
                }
            }
            idx.push_back(p);
            out.at(idx) = std::move(v);
            idx.pop_back();
        }
    }
    return out;
}

Series Geometry::laplacian(const Series &f) const
{
    Series out(n_, f.prec() - 2);
    for (int i = 0; i < n_; ++i) {
        const Series di = f.d(i);
        for (int j = 0; j < n_; ++j) {
            out += Series::multiply(ginv(i, j), di.dbar(j), out.prec());
        }
    }
    return out;
}

Tensor Geometry::raise(const Tensor &t, int slot, int cap) const
{
    // Holo slot index i becomes an index a to be summed against an anti slot:
    // T'[..a..] = sum_i g^{i abar} T[..i..]
    Tensor out(t.n, t.slots, std::min(cap, t.prec()));
    out.slots[static_cast<std::size_t>(slot)] = Slot::anti;
    std::vector<int> idx;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t.c[k].is_zero()) {
            continue;
        }
        t.unflatten(k, idx);
        const int i = idx[static_cast<std::size_t>(slot)];
        for (int a = 0; a < n_; ++a) {
            idx[static_cast<std::size_t>(slot)] = a;
            out.at(idx) += Series::multiply(ginv(i, a), t.c[k], out.c[0].prec());
        }
    }
    return out;
}

Tensor Geometry::einsum(const std::vector<Factor> &factors, const std::string &out, int cap) const
{
    // Label occurrences.
    std::map<char, std::vector<std::pair<int, int>>> occ;
    for (std::size_t f = 0; f < factors.size(); ++f) {
        const auto &fac = factors[f];
        if (static_cast<int>(fac.labels.size()) != fac.t->rank()) {
            throw std::invalid_argument("einsum: label count does not match tensor rank");
        }
        for (std::size_t s = 0; s < fac.labels.size(); ++s) {
            occ[fac.labels[s]].push_back({static_cast<int>(f), static_cast<int>(s)});
        }
    }
    std::vector<Tensor> local;
    local.reserve(factors.size());
    int prec = cap;
    for (const auto &f : factors) {
        local.push_back(f.t->truncated(cap));
        prec = std::min(prec, f.t->prec());
    }
    std::vector<char> summed;
    for (const auto &[label, where] : occ) {
        const bool free = out.find(label) != std::string::npos;
        if (free) {
            if (where.size() != 1) {
                throw std::invalid_argument("einsum: free label used more than once");
            }
            continue;
        }
        if (where.size() != 2) {
            throw std::invalid_argument(std::string("einsum: label '") + label + "' must appear twice");
        }
        const auto [f0, s0] = where[0];
        const auto [f1, s1] = where[1];
        const Slot k0 = local[static_cast<std::size_t>(f0)].slots[static_cast<std::size_t>(s0)];
        const Slot k1 = local[static_cast<std::size_t>(f1)].slots[static_cast<std::size_t>(s1)];
        if (k0 == k1) {
            throw std::invalid_argument(std::string("einsum: label '") + label + "' pairs slots of the same type");
        }
        const auto [fh, sh] = k0 == Slot::holo ? where[0] : where[1];
        auto &target = local[static_cast<std::size_t>(fh)];
        target = raise(target, sh, cap);
        summed.push_back(label);
    }

    std::vector<Slot> out_slots;
    for (char c : out) {
        auto it = occ.find(c);
        if (it == occ.end()) {
            throw std::invalid_argument("einsum: unknown output label");
        }
        const auto [f, s] = it->second[0];
        out_slots.push_back(local[static_cast<std::size_t>(f)].slots[static_cast<std::size_t>(s)]);
    }
    Tensor result(n_, out_slots, prec);

    std::string all = out;
    all.append(summed.begin(), summed.end());
    std::vector<int> val(all.size(), 0);
    std::vector<std::vector<int>> pos(local.size());
    for (std::size_t f = 0; f < local.size(); ++f) {
        for (char c : factors[f].labels) {
            pos[f].push_back(static_cast<int>(all.find(c)));
        }
    }
    std::vector<int> idx;
    const std::size_t nfree = out.size();
    while (true) {
        Series prod = Series::constant(n_, QComplex(1), prec);
        for (std::size_t f = 0; f < local.size() && !prod.is_zero(); ++f) {
            idx.clear();
            for (int p : pos[f]) {
                idx.push_back(val[static_cast<std::size_t>(p)]);
            }
            const Series &comp = local[f].at(idx);
            if (comp.is_zero()) {
                prod = Series(n_, prec);
                break;
            }
            prod = Series::multiply(prod, comp, prec);
        }
        if (!prod.is_zero()) {
            std::span<const int> free_idx(val.data(), nfree);
            result.at(free_idx) += prod;
        }
        // Odometer over all labels.
        std::size_t d = all.size();
        while (d > 0) {
            --d;
            if (++val[d] < n_) {
                break;
            }
            val[d] = 0;
            if (d == 0) {
                return result;
            }
        }
        if (all.empty()) {
            return result;
        }
    }
}

Series Geometry::norm2(const Tensor &t, int cap) const
{
    std::string labels;
    for (int s = 0; s < t.rank(); ++s) {
        labels.push_back(static_cast<char>('a' + s));
    }
    const Tensor tc = t.conj();
    return einsum({{&t, labels}, {&tc, labels}}, "", cap).c[0];
}

} // namespace bergman::detail
