#pragma once

#include <memory>
#include <string>
#include <vector>

#include "engel/randgen.hpp"

namespace engel {

// Finite presentation of a graded-commutative Z2 algebra: basis labels per
// degree and a bilinear multiplication table on the flattened basis.
// Commutativity and associativity are checked exhaustively at load.
class Z2RingPresentation {
  public:
    // degree_labels[d] lists the degree-d basis labels; degree 0 must be {"1"}.
    // table entries are (i, j, k, bit): basis_i * basis_j has coefficient bit
    // on basis_k. Products with the unit are implied; missing pairs are zero.
    Z2RingPresentation(std::vector<std::vector<std::string>> degree_labels,
                       const std::vector<std::array<int, 4>>& table);

    int basis_size() const { return static_cast<int>(labels_.size()); }
    int top_degree() const { return static_cast<int>(degree_of_.empty() ? 0 : *std::max_element(degree_of_.begin(), degree_of_.end())); }
    int degree_of(int basis_index) const { return degree_of_[basis_index]; }
    const std::string& label(int basis_index) const { return labels_[basis_index]; }
    const std::vector<std::vector<std::string>>& degree_labels() const { return degree_labels_; }

    // -1 when the label is unknown.
    int index_of(const std::string& label) const;

    // Product of basis elements as a coefficient vector.
    const std::vector<std::uint8_t>& basis_product(int i, int j) const { return mul_[i][j]; }

    static std::shared_ptr<const Z2RingPresentation> from_json(const std::string& json_text);
    std::string to_json() const;

    // Z2[g]/(g^(top+1)) convenience presentations; generators may sit in any
    // positive degree, e.g. {("a",1)} with top 4 gives Z2[a]/(a^5).
    static std::shared_ptr<const Z2RingPresentation> truncated_polynomial_ring(
        const std::vector<std::pair<std::string, int>>& generators, int top_degree);

  private:
    std::vector<std::vector<std::string>> degree_labels_;
    std::vector<std::string> labels_;
    std::vector<int> degree_of_;
    std::vector<std::vector<std::vector<std::uint8_t>>> mul_;
    void check_laws() const;
};

using RingPtr = std::shared_ptr<const Z2RingPresentation>;

class Z2RingElement {
  public:
    Z2RingElement() = default;
    Z2RingElement(RingPtr ring, std::vector<std::uint8_t> coeffs);

    static Z2RingElement zero(RingPtr ring);
    static Z2RingElement basis(RingPtr ring, int index);
    // Sum of basis labels, e.g. "a + b2" or "a+b2"; "0" is the zero element.
    static Z2RingElement parse(RingPtr ring, const std::string& text);

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::uint8_t>& coeffs() const { return coeffs_; }
    bool is_zero() const;
    // Degree when homogeneous; -1 for zero; throws DegreeMismatch when mixed.
    int homogeneous_degree() const;

    Z2RingElement operator+(const Z2RingElement& other) const;
    bool operator==(const Z2RingElement& other) const;
    std::string to_string() const;

  private:
    RingPtr ring_;
    std::vector<std::uint8_t> coeffs_;
};

Z2RingElement ring_mul(const Z2RingElement& a, const Z2RingElement& b);

struct Theorem2Classes {
    Z2RingElement sigma1;       // degree 2
    Z2RingElement sigma2;       // degree 2
    Z2RingElement union_class;  // degree 2
    Z2RingElement intersection; // degree 3
};

// Mod-2 dual classes of the degeneration loci from the Stiefel-Whitney data
// (w1(D), w2(D), w1(Q), w2(Q)); inputs must be homogeneous of degrees
// (1, 2, 1, 2) in one presentation.
Theorem2Classes theorem2_classes(const Z2RingElement& w1D, const Z2RingElement& w2D,
                                 const Z2RingElement& w1Q, const Z2RingElement& w2Q);

struct CharNumbers {
    long long euler = 0;
    long long signature = 0;
};

// An oriented 4-manifold carries an oriented 2-plane field iff the Euler
// characteristic is even and congruent to the signature mod 4.
bool existence_criterion(const CharNumbers& c);

// Random homogeneous element of the given degree (for property checks).
Z2RingElement random_element(RingPtr ring, int degree, Rng& rng);

} // namespace engel
