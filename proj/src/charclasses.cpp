#include "engel/charclasses.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "engel/errors.hpp"

namespace engel {

Z2RingPresentation::Z2RingPresentation(std::vector<std::vector<std::string>> degree_labels,
                                       const std::vector<std::array<int, 4>>& table)
    : degree_labels_(std::move(degree_labels)) {
    if (degree_labels_.empty() || degree_labels_[0] != std::vector<std::string>{"1"})
        throw Error(ErrorCode::SemanticError, "degree-0 basis must be exactly {\"1\"}");
    for (size_t d = 0; d < degree_labels_.size(); ++d) {
        for (const auto& label : degree_labels_[d]) {
            if (index_of(label) >= 0)
                throw Error(ErrorCode::SemanticError, "duplicate basis label '" + label + "'");
            labels_.push_back(label);
            degree_of_.push_back(static_cast<int>(d));
        }
    }
    const int n = basis_size();
    mul_.assign(n, std::vector<std::vector<std::uint8_t>>(
                       n, std::vector<std::uint8_t>(static_cast<size_t>(n), 0)));
    // Unit row/column.
    for (int i = 0; i < n; ++i) {
        mul_[0][i][static_cast<size_t>(i)] = 1;
        mul_[i][0][static_cast<size_t>(i)] = 1;
    }
    for (const auto& [i, j, k, bit] : table) {
        if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n || (bit != 0 && bit != 1))
            throw Error(ErrorCode::SemanticError, "multiplication entry out of range");
        if (i == 0 || j == 0) continue; // unit products are implied
        if (degree_of_[i] + degree_of_[j] != degree_of_[k] && bit == 1)
            throw Error(ErrorCode::SemanticError, "multiplication entry violates the grading");
        mul_[i][j][static_cast<size_t>(k)] = static_cast<std::uint8_t>(bit);
        mul_[j][i][static_cast<size_t>(k)] = static_cast<std::uint8_t>(bit);
    }
    check_laws();
}

int Z2RingPresentation::index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) return -1;
    return static_cast<int>(it - labels_.begin());
}

void Z2RingPresentation::check_laws() const {
    const int n = basis_size();
    auto mul_vec = [&](const std::vector<std::uint8_t>& a, int j) {
        std::vector<std::uint8_t> out(static_cast<size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            if (!a[static_cast<size_t>(i)]) continue;
            const auto& row = mul_[i][j];
            for (int k = 0; k < n; ++k) out[static_cast<size_t>(k)] ^= row[static_cast<size_t>(k)];
        }
        return out;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (mul_[i][j] != mul_[j][i])
                throw Error(ErrorCode::SemanticError, "multiplication table is not commutative");
            for (int k = 0; k < n; ++k) {
                // (e_i e_j) e_k == e_i (e_j e_k)
                auto lhs = mul_vec(mul_[i][j], k);
                auto rhs = mul_vec(mul_[j][k], i);
                if (lhs != rhs)
                    throw Error(ErrorCode::SemanticError, "multiplication table is not associative");
            }
        }
    }
}

RingPtr Z2RingPresentation::from_json(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::SyntaxError, std::string("ring JSON: ") + e.what());
    }
    if (!j.contains("degrees") || !j["degrees"].is_array())
        throw Error(ErrorCode::SemanticError, "ring JSON: missing 'degrees'");
    std::vector<std::vector<std::string>> degrees;
    for (const auto& level : j["degrees"]) degrees.push_back(level.get<std::vector<std::string>>());
    std::vector<std::array<int, 4>> table;
    if (j.contains("mul")) {
        for (const auto& e : j["mul"]) {
            if (!e.is_array() || e.size() != 4)
                throw Error(ErrorCode::SemanticError, "ring JSON: 'mul' entries are [i,j,k,bit]");
            table.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>()});
        }
    }
    return std::make_shared<Z2RingPresentation>(std::move(degrees), table);
}

std::string Z2RingPresentation::to_json() const {
    nlohmann::json j;
    j["degrees"] = degree_labels_;
    auto table = nlohmann::json::array();
    for (int i = 1; i < basis_size(); ++i)
        for (int jdx = i; jdx < basis_size(); ++jdx)
            for (int k = 0; k < basis_size(); ++k)
                if (mul_[i][jdx][static_cast<size_t>(k)])
                    table.push_back({i, jdx, k, 1});
    j["mul"] = table;
    return j.dump(2);
}

RingPtr Z2RingPresentation::truncated_polynomial_ring(
    const std::vector<std::pair<std::string, int>>& generators, int top_degree) {
    // Enumerate monomials of weighted degree <= top_degree.
    struct Monomial {
        std::vector<int> exps;
        int degree = 0;
    };
    std::vector<Monomial> monos{{std::vector<int>(generators.size(), 0), 0}};
    for (size_t g = 0; g < generators.size(); ++g) {
        std::vector<Monomial> grown;
        for (const auto& m : monos) {
            Monomial cur = m;
            while (cur.degree <= top_degree) {
                grown.push_back(cur);
                cur.exps[g] += 1;
                cur.degree += generators[g].second;
            }
        }
        monos = std::move(grown);
    }
    auto label_of = [&](const Monomial& m) -> std::string {
        if (m.degree == 0) return "1";
        std::string out;
        for (size_t g = 0; g < generators.size(); ++g) {
            if (m.exps[g] == 0) continue;
            out += generators[g].first;
            if (m.exps[g] > 1) out += std::to_string(m.exps[g]);
        }
        return out;
    };
    std::sort(monos.begin(), monos.end(), [](const Monomial& a, const Monomial& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.exps < b.exps;
    });
    std::vector<std::vector<std::string>> degrees(static_cast<size_t>(top_degree) + 1);
    std::map<std::vector<int>, int> index;
    for (const auto& m : monos) degrees[static_cast<size_t>(m.degree)].push_back(label_of(m));
    // Flattened indices follow (degree, exps) order, matching the sort above.
    for (size_t i = 0; i < monos.size(); ++i) index[monos[i].exps] = static_cast<int>(i);
    std::vector<std::array<int, 4>> table;
    for (size_t i = 0; i < monos.size(); ++i) {
        for (size_t j = i; j < monos.size(); ++j) {
            if (monos[i].degree + monos[j].degree > top_degree) continue;
            std::vector<int> sum(generators.size());
            for (size_t g = 0; g < generators.size(); ++g)
                sum[g] = monos[i].exps[g] + monos[j].exps[g];
            table.push_back({static_cast<int>(i), static_cast<int>(j), index.at(sum), 1});
        }
    }
    return std::make_shared<Z2RingPresentation>(std::move(degrees), table);
}

Z2RingElement::Z2RingElement(RingPtr ring, std::vector<std::uint8_t> coeffs)
    : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != ring_->basis_size())
        throw Error(ErrorCode::PresentationMismatch, "coefficient vector size mismatch");
}

Z2RingElement Z2RingElement::zero(RingPtr ring) {
    std::vector<std::uint8_t> c(static_cast<size_t>(ring->basis_size()), 0);
    return Z2RingElement(std::move(ring), std::move(c));
}

Z2RingElement Z2RingElement::basis(RingPtr ring, int index) {
    std::vector<std::uint8_t> c(static_cast<size_t>(ring->basis_size()), 0);
    c[static_cast<size_t>(index)] = 1;
    return Z2RingElement(std::move(ring), std::move(c));
}

Z2RingElement Z2RingElement::parse(RingPtr ring, const std::string& text) {
    Z2RingElement out = zero(ring);
    std::string token;
    auto flush = [&](const std::string& t) {
        std::string name;
        for (char c : t)
            if (!std::isspace(static_cast<unsigned char>(c))) name.push_back(c);
        if (name.empty() || name == "0") return;
        int idx = ring->index_of(name);
        if (idx < 0) throw Error(ErrorCode::SemanticError, "unknown basis label '" + name + "'");
        out = out + basis(ring, idx);
    };
    for (char c : text) {
        if (c == '+') {
            flush(token);
            token.clear();
        } else {
            token.push_back(c);
        }
    }
    flush(token);
    return out;
}

bool Z2RingElement::is_zero() const {
    for (auto c : coeffs_)
        if (c) return false;
    return true;
}

int Z2RingElement::homogeneous_degree() const {
    int deg = -1;
    for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) {
        if (!coeffs_[static_cast<size_t>(i)]) continue;
        int d = ring_->degree_of(i);
        if (deg >= 0 && d != deg)
            throw Error(ErrorCode::DegreeMismatch, "element has mixed degree");
        deg = d;
    }
    return deg;
}

Z2RingElement Z2RingElement::operator+(const Z2RingElement& other) const {
    if (ring_ != other.ring_)
        throw Error(ErrorCode::PresentationMismatch, "elements from different presentations");
    std::vector<std::uint8_t> out = coeffs_;
    for (size_t i = 0; i < out.size(); ++i) out[i] ^= other.coeffs_[i];
    return Z2RingElement(ring_, std::move(out));
}

bool Z2RingElement::operator==(const Z2RingElement& other) const {
    return ring_ == other.ring_ && coeffs_ == other.coeffs_;
}

std::string Z2RingElement::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < static_cast<int>(coeffs_.size()); ++i) {
        if (!coeffs_[static_cast<size_t>(i)]) continue;
        if (!first) os << " + ";
        os << ring_->label(i);
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

Z2RingElement ring_mul(const Z2RingElement& a, const Z2RingElement& b) {
    if (a.ring() != b.ring())
        throw Error(ErrorCode::PresentationMismatch, "elements from different presentations");
    const auto& ring = a.ring();
    const int n = ring->basis_size();
    std::vector<std::uint8_t> out(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (!a.coeffs()[static_cast<size_t>(i)]) continue;
        for (int j = 0; j < n; ++j) {
            if (!b.coeffs()[static_cast<size_t>(j)]) continue;
            const auto& prod = ring->basis_product(i, j);
            for (int k = 0; k < n; ++k) out[static_cast<size_t>(k)] ^= prod[static_cast<size_t>(k)];
        }
    }
    return Z2RingElement(ring, std::move(out));
}

Theorem2Classes theorem2_classes(const Z2RingElement& w1D, const Z2RingElement& w2D,
                                 const Z2RingElement& w1Q, const Z2RingElement& w2Q) {
    auto require_degree = [](const Z2RingElement& e, int d, const char* name) {
        int deg = e.homogeneous_degree();
        if (deg >= 0 && deg != d)
            throw Error(ErrorCode::DegreeMismatch,
                        std::string(name) + " must be homogeneous of degree " + std::to_string(d));
    };
    require_degree(w1D, 1, "w1D");
    require_degree(w2D, 2, "w2D");
    require_degree(w1Q, 1, "w1Q");
    require_degree(w2Q, 2, "w2Q");

    Theorem2Classes out;
    out.sigma1 = ring_mul(w1D, w1D) + w2D + w2Q;
    out.union_class = w2D + ring_mul(w1Q, w1Q) + ring_mul(w1D, w1Q);
    out.sigma2 = out.sigma1 + out.union_class;
    out.intersection = ring_mul(w1D, out.sigma1);
    return out;
}

bool existence_criterion(const CharNumbers& c) {
    if (c.euler % 2 != 0) return false;
    long long diff = c.euler - c.signature;
    return ((diff % 4) + 4) % 4 == 0;
}

Z2RingElement random_element(RingPtr ring, int degree, Rng& rng) {
    std::vector<std::uint8_t> coeffs(static_cast<size_t>(ring->basis_size()), 0);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int i = 0; i < ring->basis_size(); ++i)
        if (ring->degree_of(i) == degree) coeffs[static_cast<size_t>(i)] = static_cast<std::uint8_t>(bit(rng));
    return Z2RingElement(std::move(ring), std::move(coeffs));
}

} // namespace engel
