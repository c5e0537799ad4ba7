#pragma once

#include "conservkit/algebra.hpp"
#include "conservkit/linalg.hpp"
#include "conservkit/maps.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace conservkit {

// A subspace of End(V), dim V = ambient, held as a basis of n x n matrices.
class LinearMapSpace {
public:
    // Throws InputError if a matrix has the wrong shape or the list is
    // linearly dependent.
    LinearMapSpace(std::size_t ambient, std::vector<Matrix> basis);

    // Keeps the generators that enlarge the span, in order.
    static LinearMapSpace span_of(std::size_t ambient, std::span<const Matrix> generators);
    static LinearMapSpace full(std::size_t ambient);
    static LinearMapSpace zero(std::size_t ambient) { return {ambient, {}}; }

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t size() const noexcept { return basis_.size(); }
    const std::vector<Matrix>& basis() const noexcept { return basis_; }

    // Basis matrices flattened row-major, one per row.
    Matrix coordinates() const;

    bool contains(const Matrix& m) const;
    bool contains(const LinearMapSpace& other) const;
    bool same_span(const LinearMapSpace& other) const;

private:
    std::size_t ambient_;
    std::vector<Matrix> basis_;
};

LinearMapSpace intersect(const LinearMapSpace& a, const LinearMapSpace& b);

// Solution space of D(e_i e_j) = D(e_i) e_j + e_i D(e_j) for all basis
// pairs, computed as the kernel of an n^3 x n^2 system. Matrices act on
// column coordinate vectors: D e_q = sum_p D(p, q) e_p.
LinearMapSpace derivation_space(const StructureTensor& alg);

// Coordinates on Der(W(2)) in the e-basis.
struct DerivationParams {
    Rational alpha;
    Rational beta;
    friend bool operator==(const DerivationParams&, const DerivationParams&) = default;
};

// The 8 x 8 derivation of W(2) with parameters (alpha, beta):
//   D e1 = 2a e3,  D e2 = a e1 - b e2,  D e3 = b e3 + 3a e4,  D e4 = 2b e4,
//   D e5 = -a e6,  D e6 = b e6,  D e7 = b e7,  D e8 = a e7,  (a = alpha, b = beta)
Matrix derivation_from_params(const DerivationParams& p);

struct LeibnizViolation {
    std::size_t i;
    std::size_t j;
    Vector residual;  // D(e_i e_j) - D(e_i) e_j - e_i D(e_j)
};

std::vector<LeibnizViolation> leibniz_residual(const StructureTensor& alg, const Matrix& d);

// {e_i} followed by {e_i + e_j : i < j} in lexicographic order.
std::vector<Vector> locder_test_vectors(std::size_t dim);

// Outer approximation of the local derivations: every B with B x in
// span{D_1 x, ..., D_k x} for each test vector x (plus any extra vectors).
LinearMapSpace locder_sampling_constraints(const StructureTensor& alg, const LinearMapSpace& der,
                                           std::span<const Vector> extra_vectors = {});

// Outer approximation from the identically vanishing (k+1)-minors of
// [B x | D_1 x | ... | D_k x] as polynomials in x. Throws MethodError when
// k >= n, where every such minor is vacuous.
LinearMapSpace locder_minor_constraints(const StructureTensor& alg, const LinearMapSpace& der);

struct LocDerVerdict {
    enum class Tag { Equal, Inconclusive };
    Tag tag;
    LinearMapSpace outer;
    // A member of outer outside der when tag == Inconclusive and one exists.
    std::optional<Matrix> witness;
};

// Squeeze Der <= LocDer <= outer. Equal iff the spans agree. An inconclusive
// verdict says nothing about LocDer itself, only about the approximation.
LocDerVerdict certify_locder(const LinearMapSpace& der, const LinearMapSpace& outer);

// Reads (alpha, beta) off Delta(e2) = alpha e1 - beta e2. Throws InputError
// unless dim 8 and RecoveryError if coordinates 3..8 are not all zero.
DerivationParams twolocal_der_recover(const Vector& image_of_e2);

using TwoLocalDerResult = std::variant<DerivationParams, Counterexample>;

// Recovers the derivation from the e2 sample and checks every sample against
// it. Throws ProtocolError if no sample is taken at e2.
TwoLocalDerResult twolocal_der_check(std::span<const MapSample> samples);

}  // namespace conservkit
