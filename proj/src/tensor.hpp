#ifndef BERGMAN_SRC_TENSOR_HPP
#define BERGMAN_SRC_TENSOR_HPP

// Series-valued tensors on a Kahler chart and the metric operations needed to
// build curvature invariants in arbitrary holomorphic coordinates.

#include <span>
#include <string>
#include <vector>

#include <bergman/series.hpp>

namespace bergman::detail
{

enum class Slot : char { holo, anti };

struct Tensor {
    int n = 1;
    std::vector<Slot> slots;
    // Row-major, first slot slowest.
    std::vector<Series> c;

    Tensor() = default;
    Tensor(int n, std::vector<Slot> slots, int prec);
    static Tensor scalar(const Series &s);

    int rank() const { return static_cast<int>(slots.size()); }
    std::size_t size() const { return c.size(); }
    std::size_t offset(std::span<const int> idx) const;
    Series &at(std::span<const int> idx) { return c[offset(idx)]; }
    const Series &at(std::span<const int> idx) const { return c[offset(idx)]; }
    Series &at(std::initializer_list<int> idx) { return at(std::span<const int>(idx.begin(), idx.size())); }
    const Series &at(std::initializer_list<int> idx) const
    {
        return at(std::span<const int>(idx.begin(), idx.size()));
    }
    // Multi-index of the k-th component.
    void unflatten(std::size_t k, std::vector<int> &idx) const;

    int prec() const;
    Tensor truncated(int d) const;
    // Componentwise conjugate; holo and anti slots trade places.
    Tensor conj() const;
    Tensor &operator+=(const Tensor &o);
    Tensor &operator*=(const Rational &r);
};

struct Factor {
    const Tensor *t;
    std::string labels;
};

class Geometry
{
public:
    // g_{ij} = d_i dbar_j potential. The inverse metric is kept to degree
    // ginv_prec, Christoffel symbols to gamma_prec.
    Geometry(const Series &potential, int ginv_prec, int gamma_prec);

    int dim() const { return n_; }
    const Series &g(int i, int j) const { return g_[idx(i, j)]; }
    // g^{i jbar}: sum_j ginv(i, j) g(k, j) = delta_ik.
    const Series &ginv(int i, int j) const { return ginv_[idx(i, j)]; }
    // Gamma^k_{ij} = g^{k sbar} d_j g_{i sbar}
    const Series &gamma(int k, int i, int j) const { return gamma_[(idx(k, i)) * n_ + j]; }
    const Series &gamma_bar(int k, int i, int j) const { return gamma_bar_[(idx(k, i)) * n_ + j]; }

    // log det g minus its value at the origin.
    Series log_det(int prec) const;
    // R_{i jbar k lbar} = d_k dbar_l g_{ij} - Gamma^p_{ik} dbar_l g_{pj}, truncated at cap.
    Tensor riemann(int cap) const;
    // Appends one covariant derivative slot in the given direction.
    Tensor covariant(const Tensor &t, Slot dir) const;
    Series laplacian(const Series &f) const;

    // Contracts repeated labels. Every repeated label must sit once on a holo
    // and once on an anti slot; the pair is joined with the inverse metric.
    // Labels in `out` stay free, in that order.
    Tensor einsum(const std::vector<Factor> &factors, const std::string &out, int cap) const;
    // |T|^2 with all slots paired against conj(T).
    Series norm2(const Tensor &t, int cap) const;

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * n_ + j); }
    Tensor raise(const Tensor &t, int slot, int cap) const;

    int n_;
    std::vector<Series> g_, ginv_, gamma_, gamma_bar_;
};

} // namespace bergman::detail

#endif
