#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "singforge/errors.hpp"
#include "../src/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"singforge: mixed polynomial construction and certification"};
    app.require_subcommand(1);

    std::string word, strand_file, symmetry = "auto", out_path, poly_path, seq_path, loop_path;
    int k = 0, grid = 0;
    bool strong = false;
    std::vector<long long> delta;

    auto* forge = app.add_subcommand("forge", "braid word -> certified mixed polynomial");
    forge->add_option("--word", word, "braid word, e.g. \"s=2: s1 s1\"");
    forge->add_option("--strands", strand_file, "strand CSV file");
    forge->add_option("--symmetry", symmetry, "auto|none|u_even|odd|divisor");
    forge->add_option("--k", k, "substitution exponent (default: minimal admissible)");
    forge->add_option("--out", out_path, "output path (default stdout)");

    auto* certify = app.add_subcommand("certify", "inner non-degeneracy certificate");
    certify->add_option("poly", poly_path, "mixed polynomial JSON file")->required();
    certify->add_flag("--strong", strong, "strong inner non-degeneracy");
    certify->add_option("--out", out_path, "output path");

    auto* compat = app.add_subcommand("compat", "verify + realize a compatible sequence");
    compat->add_option("sequence", seq_path, "sequence JSON file")->required();
    compat->add_option("--out", out_path, "output path");

    auto* obstruct = app.add_subcommand("obstruct", "Alexander polynomial obstructions");
    obstruct->add_option("coeffs", delta, "coefficients, lowest degree first")->required();
    obstruct->add_option("--out", out_path, "output path");

    auto* newton = app.add_subcommand("newton", "Newton boundary listing");
    newton->add_option("poly", poly_path, "mixed polynomial JSON file")->required();
    newton->add_option("--out", out_path, "output path");

    auto* plot = app.add_subcommand("plotdata", "root positions/circles CSV");
    plot->add_option("loop", loop_path, "loop polynomial JSON file")->required();
    plot->add_option("--grid", grid, "samples over one period");
    plot->add_option("--out", out_path, "output path");

    auto* sym = app.add_subcommand("symmetry", "detected braid symmetries");
    sym->add_option("--word", word, "braid word");
    sym->add_option("--strands", strand_file, "strand CSV file");
    sym->add_option("--out", out_path, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (forge->parsed()) return singforge::cmd::forge(word, strand_file, symmetry, k, out_path);
        if (certify->parsed()) return singforge::cmd::certify(poly_path, strong, out_path);
        if (compat->parsed()) return singforge::cmd::compat(seq_path, out_path);
        if (obstruct->parsed()) return singforge::cmd::obstruct(delta, out_path);
        if (newton->parsed()) return singforge::cmd::newton_cmd(poly_path, out_path);
        if (plot->parsed()) return singforge::cmd::plotdata(loop_path, grid, out_path);
        if (sym->parsed()) return singforge::cmd::symmetry_cmd(word, strand_file, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
