#ifndef SINGFORGE_ERRORS_HPP
#define SINGFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace singforge {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// trigpoly
struct ResidualTooLarge : Error {
    double residual;
    explicit ResidualTooLarge(double r)
        : Error("approximation residual " + std::to_string(r) + " exceeds tolerance"),
          residual(r) {}
};

// braid
struct NonGenericPosition : Error {
    explicit NonGenericPosition(const std::string& msg) : Error(msg) {}
};
struct Overlap : Error {
    explicit Overlap(const std::string& msg) : Error(msg) {}
};

// looppoly
struct RootDriftTooLarge : Error {
    double drift;
    RootDriftTooLarge(double d, double cap)
        : Error("projection moved roots by " + std::to_string(d) +
                " (cap " + std::to_string(cap) + ")"),
          drift(d) {}
};
struct SolverDiverged : Error {
    explicit SolverDiverged(const std::string& msg) : Error(msg) {}
};
struct MarginViolated : Error {
    explicit MarginViolated(const std::string& msg) : Error(msg) {}
};

// mixedpoly
struct InadmissibleK : Error {
    int degree_index;   // u-degree j whose coefficient fails
    int frequency;      // offending frequency l
    int min_even_k;     // smallest admissible even k
    int min_odd_k;      // smallest admissible odd k
    InadmissibleK(int j, int l, int ke, int ko)
        : Error("exponent substitution inadmissible at u^" + std::to_string(j) +
                ", frequency " + std::to_string(l) +
                "; smallest admissible k: even " + std::to_string(ke) +
                ", odd " + std::to_string(ko)),
          degree_index(j), frequency(l), min_even_k(ke), min_odd_k(ko) {}
};
struct NonIntegerFrequency : Error {
    explicit NonIntegerFrequency(const std::string& msg) : Error(msg) {}
};
struct VertexMismatch : Error {
    explicit VertexMismatch(const std::string& msg) : Error(msg) {}
};
struct WeightOrderViolation : Error {
    explicit WeightOrderViolation(const std::string& msg) : Error(msg) {}
};

// pfibered
struct DegenerateCriticalPoint : Error {
    explicit DegenerateCriticalPoint(const std::string& msg) : Error(msg) {}
};
struct BranchCollision : Error {
    explicit BranchCollision(const std::string& msg) : Error(msg) {}
};
struct HypothesisFailed : Error {
    explicit HypothesisFailed(const std::string& msg) : Error(msg) {}
};
struct WeightSelectionFailed : Error {
    explicit WeightSelectionFailed(const std::string& msg) : Error(msg) {}
};

// obstruction
struct SearchExhausted : Error {
    explicit SearchExhausted(const std::string& msg) : Error(msg) {}
};

}  // namespace singforge

#endif
