#ifndef SINGFORGE_CERTIFICATE_HPP
#define SINGFORGE_CERTIFICATE_HPP

#include <complex>
#include <string>
#include <vector>

namespace singforge {

// Outcome of a numerical check.  `margin` is the observed worst-case
// distance from failure on the verification grid, net of `slack`, the
// Lipschitz-type allowance for behaviour between grid points.  A certificate
// passes only when the net margin is positive; INCONCLUSIVE means neither a
// certified positive margin nor a converged counterexample was found.
struct Certificate {
    enum class Status { Pass, Fail, Inconclusive };

    std::string check;
    Status status = Status::Inconclusive;
    double margin = 0.0;
    double slack = 0.0;
    int grid = 0;
    std::vector<std::complex<double>> witnesses;  // offending points, if any
    std::string detail;

    bool pass() const { return status == Status::Pass; }

    static Certificate passed(std::string name, double margin, double slack, int grid) {
        Certificate c;
        c.check = std::move(name);
        c.status = Status::Pass;
        c.margin = margin;
        c.slack = slack;
        c.grid = grid;
        return c;
    }
    static Certificate failed(std::string name, double margin, double slack, int grid,
                              std::string detail = {}) {
        Certificate c;
        c.check = std::move(name);
        c.status = Status::Fail;
        c.margin = margin;
        c.slack = slack;
        c.grid = grid;
        c.detail = std::move(detail);
        return c;
    }
    static Certificate inconclusive(std::string name, double margin, double slack, int grid,
                                    std::string detail = {}) {
        Certificate c;
        c.check = std::move(name);
        c.status = Status::Inconclusive;
        c.margin = margin;
        c.slack = slack;
        c.grid = grid;
        c.detail = std::move(detail);
        return c;
    }
};

}  // namespace singforge

#endif
