#ifndef SINGFORGE_COMMANDS_HPP
#define SINGFORGE_COMMANDS_HPP

#include <string>
#include <vector>

namespace singforge::cmd {

// Numeric defaults, loaded from config/defaults.json when present (path from
// SINGFORGE_CONFIG, else relative to the working directory); flags and the
// SINGFORGE_GRID environment variable override.
struct Defaults {
    int grid = 1024;
    int plot_grid = 256;
    double coeff_tol = 1e-10;
};
Defaults load_defaults();

// Exit codes: 0 all certificates pass, 1 input/file error, 2 requested
// symmetry not present, 3 approximation/search failed, 4 certificate failed.
int forge(const std::string& word, const std::string& strand_file, const std::string& symmetry,
          int k, const std::string& out_path);
int certify(const std::string& poly_path, bool strong, const std::string& out_path);
int compat(const std::string& seq_path, const std::string& out_path);
int obstruct(const std::vector<long long>& delta, const std::string& out_path);
int newton_cmd(const std::string& poly_path, const std::string& out_path);
int plotdata(const std::string& loop_path, int grid, const std::string& out_path);
int symmetry_cmd(const std::string& word, const std::string& strand_file,
                 const std::string& out_path);

}  // namespace singforge::cmd

#endif
