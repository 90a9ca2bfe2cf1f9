#ifndef SINGFORGE_IO_HPP
#define SINGFORGE_IO_HPP

#include <string>
#include <vector>

#include "singforge/braid.hpp"
#include "singforge/certificate.hpp"
#include "singforge/looppoly.hpp"
#include "singforge/mixedpoly.hpp"
#include "singforge/pfibered.hpp"
#include "singforge/trigpoly.hpp"

namespace singforge {

// All emitters produce byte-stable output: keys in fixed order, floats
// rendered with %.17g.

std::string format_double(double x);

std::string to_json(const TrigPoly& a);      // {"freqs": [[l, re, im], ...]}
std::string to_json(const LoopPoly& g);      // {"coeffs": [...], "degree": s}
std::string to_json(const MixedPoly& f);     // {"terms": [[m1,m2,n1,n2,re,im], ...]}
std::string to_json(const Certificate& c);
std::string to_json(const std::vector<Certificate>& cs);

TrigPoly trigpoly_from_json(const std::string& text);
LoopPoly looppoly_from_json(const std::string& text);
MixedPoly mixedpoly_from_json(const std::string& text);

// {"braids": [LoopPoly...], "coefficients": [TrigPoly...], "o_mults": [...]}
// with an optional "multiplicities" list of integer lists.
std::vector<PFiberData> sequence_from_json(const std::string& text);
std::string to_json(const std::vector<PFiberData>& seq);

// Strand CSV: header t,strand_id,re,im; one row per sample.  Reading infers
// the closure permutation by endpoint matching.
std::string strands_to_csv(const GeometricBraid& B);
GeometricBraid strands_from_csv(const std::string& text);

// Root-position plot data: t,root_index,re,im,circle_radius,circle_index
// where circles are the closure components with their mean modulus.
std::string plotdata_csv(const LoopPoly& g, int grid = 256);

std::string read_file(const std::string& path);       // throws Error
void write_file(const std::string& path, const std::string& content);

}  // namespace singforge

#endif
