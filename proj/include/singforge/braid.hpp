#ifndef SINGFORGE_BRAID_HPP
#define SINGFORGE_BRAID_HPP

#include <complex>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace singforge {

using cplx = std::complex<double>;

// Artin generator word.  Generators are (index, sign) with 1 <= index <= s-1.
struct BraidWord {
    int strands = 1;
    std::vector<std::pair<int, int>> word;  // (i, +1/-1)

    std::vector<int> closure_permutation() const;  // 0-based slot permutation

    static BraidWord parse(const std::string& text);  // "s=3: s1 s1 s2^-1"
    std::string format() const;
};

// Sampled parametric strands u_j : [0,2pi] -> C on a uniform grid of n
// intervals (n+1 samples each, endpoint included).  The closure permutation
// matches u_j(2pi) to u_{pi(j)}(0).  Strands that are identically 0 are
// flagged exactly so s-tilde bookkeeping stays exact.
class GeometricBraid {
public:
    static constexpr int kDefaultGrid = 1024;
    static constexpr int kMaxGrid = 1 << 17;

    GeometricBraid(std::vector<std::vector<cplx>> strands, std::vector<int> closure,
                   std::vector<bool> zero_strand = {});

    // Sample analytic paths, refining the grid x2 until consecutive-sample
    // motion drops below min_sep/4.
    static GeometricBraid sample(int s, const std::function<cplx(int, double)>& path,
                                 std::vector<int> closure, int initial_grid = kDefaultGrid);

    int strand_count() const { return static_cast<int>(strands_.size()); }
    int nonzero_strand_count() const;  // s-tilde
    int grid() const { return grid_n_; }
    double t_at(int i) const;
    cplx at(int j, int i) const { return strands_[j][i]; }
    const std::vector<std::vector<cplx>>& strands() const { return strands_; }
    bool is_zero_strand(int j) const { return zero_strand_[j]; }
    const std::vector<int>& closure() const { return closure_; }
    double min_sep() const { return min_sep_; }
    double max_modulus() const;
    double min_modulus() const;  // over nonzero strands

    std::vector<std::vector<int>> components() const;  // cycles of the closure
    // Winding number of u_i - u_j over [0,2pi], in units of full turns.
    double pair_winding(int i, int j) const;
    // Component-pair linking numbers (and within-component total winding on
    // the diagonal); rotation-invariant braid data used for round trips.
    std::vector<std::vector<double>> linking_table() const;

    GeometricBraid rotated(double theta) const;
    GeometricBraid scaled(double factor) const;

private:
    void finalize();
    std::vector<std::vector<cplx>> strands_;
    std::vector<bool> zero_strand_;
    std::vector<int> closure_;
    int grid_n_ = 0;
    double min_sep_ = 0.0;
};

struct BraidSymmetry {
    enum class Kind { TauU, TauK };  // TauK with k: (u,t) -> (u e^{i pi/k}, t+pi)
    Kind kind;
    int k = 0;
    static BraidSymmetry tau_u() { return {Kind::TauU, 0}; }
    static BraidSymmetry tau_k(int k) { return {Kind::TauK, k}; }
};

struct SymmetryInfo {
    bool u_even = false;
    std::set<int> k_symmetric;  // detected k among {1, 2, 4, ...}
    bool odd = false;           // k_symmetric contains 1
    bool divisor_symmetric = false;
    int best_divisor = 0;  // largest detected 2^K dividing s-tilde, else 0
};

GeometricBraid from_word(const BraidWord& w, int grid = 0);

// Crossing detection by real-part order changes.  Throws NonGenericPosition
// when simultaneous crossings survive x16 subsampling; word_of wraps it with
// deterministic rotation retries.
BraidWord to_word(const GeometricBraid& B);
BraidWord word_of(const GeometricBraid& B);

GeometricBraid symmetry_transform(const GeometricBraid& B, BraidSymmetry tau);
SymmetryInfo detect_symmetry(const GeometricBraid& B);

GeometricBraid power(const GeometricBraid& B, int p);

// B(inner, outer): inner braid scaled into an eps-tube around the 0-axis of
// outer's cylinder.  eps <= 0 selects (min outer modulus)/(4 max inner).
GeometricBraid nest(const GeometricBraid& inner, const GeometricBraid& outer,
                    double eps = 0.0);

// T^{2m} on s+1 strands, T = sigma_s ... sigma_1 sigma_1 ... sigma_s.
BraidWord torus_word(int s, int m);

}  // namespace singforge

#endif
