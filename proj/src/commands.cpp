#include "commands.hpp"

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "singforge/errors.hpp"
#include "singforge/io.hpp"
#include "singforge/obstruction.hpp"
#include "singforge/pfibered.hpp"

namespace singforge::cmd {

namespace {

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-")
        std::cout << content << "\n";
    else
        write_file(out_path, content);
}

int env_grid(int fallback) {
    if (const char* s = std::getenv("SINGFORGE_GRID")) {
        const int g = std::atoi(s);
        if (g > 0) return g;
    }
    return fallback;
}

GeometricBraid load_braid(const std::string& word, const std::string& strand_file, int grid) {
    if (!word.empty()) return from_word(BraidWord::parse(word), grid);
    if (!strand_file.empty()) return strands_from_csv(read_file(strand_file));
    throw Error("either --word or --strands is required");
}

std::string symmetry_json(const SymmetryInfo& info) {
    std::ostringstream os;
    os << "{\"best_divisor\":" << info.best_divisor
       << ",\"divisor_symmetric\":" << (info.divisor_symmetric ? "true" : "false")
       << ",\"k_symmetric\":[";
    bool first = true;
    for (int k : info.k_symmetric) {
        if (!first) os << ",";
        first = false;
        os << k;
    }
    os << "],\"odd\":" << (info.odd ? "true" : "false")
       << ",\"u_even\":" << (info.u_even ? "true" : "false") << "}";
    return os.str();
}

// Picks the synthesis symmetry class: an explicit request must be detected
// (else SymmetryNotPresent via nullopt), "auto" takes the strongest available.
SymmetryTag choose_symmetry(const SymmetryInfo& info, const std::string& request, bool* ok) {
    *ok = true;
    if (request == "none") return SymmetryTag::none();
    if (request == "u_even") {
        *ok = info.u_even;
        return SymmetryTag::u_even();
    }
    if (request == "odd") {
        *ok = info.odd;
        return SymmetryTag::odd();
    }
    if (request == "divisor") {
        *ok = info.divisor_symmetric;
        return SymmetryTag::divisor_sym(info.best_divisor ? info.best_divisor : 1);
    }
    if (request != "auto") {
        *ok = false;
        return SymmetryTag::none();
    }
    if (info.divisor_symmetric) return SymmetryTag::divisor_sym(info.best_divisor);
    if (info.odd) return SymmetryTag::odd();
    if (info.u_even) return SymmetryTag::u_even();
    return SymmetryTag::none();
}

}  // namespace

Defaults load_defaults() {
    Defaults d;
    std::string path = "config/defaults.json";
    if (const char* p = std::getenv("SINGFORGE_CONFIG")) path = p;
    try {
        const auto j = nlohmann::json::parse(read_file(path));
        if (j.contains("grid")) d.grid = j["grid"].get<int>();
        if (j.contains("plot_grid")) d.plot_grid = j["plot_grid"].get<int>();
        if (j.contains("coeff_tol")) d.coeff_tol = j["coeff_tol"].get<double>();
    } catch (const std::exception&) {
        // fall back to built-in defaults
    }
    d.grid = env_grid(d.grid);
    return d;
}

int forge(const std::string& word, const std::string& strand_file, const std::string& symmetry,
          int k, const std::string& out_path) {
    const Defaults defaults = load_defaults();
    const GeometricBraid B = load_braid(word, strand_file, defaults.grid);
    const SymmetryInfo info = detect_symmetry(B);
    bool sym_ok = false;
    const SymmetryTag tag = choose_symmetry(info, symmetry, &sym_ok);
    if (!sym_ok) {
        std::cerr << "requested symmetry not present: " << symmetry << "\n";
        return 2;
    }
    LoopPoly g = [&] {
        try {
            return from_braid(B, tag);
        } catch (const ResidualTooLarge& e) {
            std::cerr << e.what() << "\n";
            std::exit(3);
        } catch (const RootDriftTooLarge& e) {
            std::cerr << e.what() << "\n";
            std::exit(3);
        }
    }();
    const int divisor = (tag.kind == SymmetryTag::Kind::Divisor) ? tag.divisor : 1;
    if (k <= 0) {
        const auto [ke, ko] = admissible_k(g, 0, divisor);
        if (ke == 0 && ko == 0) {
            std::cerr << "no admissible exponent k for this loop\n";
            return 3;
        }
        k = (ke == 0) ? ko : (ko == 0 ? ke : std::min(ke, ko));
    }
    MixedPoly f = [&] {
        try {
            return from_loop(g, k, 0, divisor);
        } catch (const InadmissibleK& e) {
            std::cerr << e.what() << "\n";
            std::exit(3);
        }
    }();
    const Certificate weak = check_inner_nondegenerate(f);
    const Certificate strong = check_strongly_inner_nondegenerate(f);
    std::ostringstream os;
    os << "{\"certificates\":" << to_json(std::vector<Certificate>{weak, strong})
       << ",\"k\":" << k << ",\"poly\":" << to_json(f)
       << ",\"symmetry\":" << symmetry_json(info) << "}";
    emit(out_path, os.str());
    return (weak.pass() && strong.pass()) ? 0 : 4;
}

int certify(const std::string& poly_path, bool strong, const std::string& out_path) {
    const MixedPoly f = mixedpoly_from_json(read_file(poly_path));
    const Certificate c =
        strong ? check_strongly_inner_nondegenerate(f) : check_inner_nondegenerate(f);
    emit(out_path, to_json(c));
    return c.pass() ? 0 : 4;
}

int compat(const std::string& seq_path, const std::string& out_path) {
    const auto seq = sequence_from_json(read_file(seq_path));
    const CompatReport rep = verify_compatible(seq);
    std::ostringstream os;
    os << "{\"certificates\":[";
    for (std::size_t i = 0; i < rep.certs.size(); ++i) {
        if (i) os << ",";
        os << to_json(rep.certs[i].base);
    }
    os << "],\"detail\":" << nlohmann::json(rep.detail).dump()
       << ",\"ok\":" << (rep.ok ? "true" : "false");
    bool all_pass = rep.ok;
    if (rep.ok) {
        const RealizeResult real = realize(seq);
        os << ",\"ks\":[";
        for (std::size_t i = 0; i < real.ks.size(); ++i) {
            if (i) os << ",";
            os << real.ks[i];
        }
        os << "],\"poly\":" << to_json(real.poly) << ",\"strong\":" << to_json(real.strong);
        all_pass = all_pass && real.strong.pass();
    }
    os << "}";
    emit(out_path, os.str());
    return all_pass ? 0 : 4;
}

int obstruct(const std::vector<long long>& delta, const std::string& out_path) {
    const IntLaurentPoly poly{std::vector<long long>(delta)};
    SymmetryReport rep;
    try {
        rep = symmetry_report(poly);
    } catch (const SearchExhausted& e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    std::ostringstream os;
    os << "{\"excluded\":" << (rep.excluded ? "true" : "false")
       << ",\"hartley\":" << (rep.hartley.possible ? "\"possible\"" : "\"obstructed\"")
       << ",\"murasugi\":" << (rep.murasugi.possible ? "\"possible\"" : "\"obstructed\"")
       << ",\"summary\":" << nlohmann::json(rep.summary).dump() << "}";
    emit(out_path, os.str());
    return 0;
}

int newton_cmd(const std::string& poly_path, const std::string& out_path) {
    const MixedPoly f = mixedpoly_from_json(read_file(poly_path));
    const NewtonData data = newton(f);
    if (data.boundary_vertices.size() == 1 && data.boundary_vertices[0] == std::pair<int, int>{0, 0})
        throw Error("constant polynomial has no Newton boundary");
    std::ostringstream os;
    os << "{\"faces\":[";
    for (std::size_t i = 0; i < data.faces.size(); ++i) {
        if (i) os << ",";
        const auto& face = data.faces[i];
        os << "{\"P\":[" << face.P.p1 << "," << face.P.p2 << "],\"d\":" << face.d
           << ",\"support\":[";
        for (std::size_t q = 0; q < face.support.size(); ++q) {
            if (q) os << ",";
            os << "[" << face.support[q].first << "," << face.support[q].second << "]";
        }
        os << "]}";
    }
    os << "],\"radially_weighted_homogeneous\":"
       << (data.radially_weighted_homogeneous ? "true" : "false")
       << ",\"semiholomorphic\":" << (data.semiholomorphic ? "true" : "false")
       << ",\"u_convenient\":" << (data.u_convenient ? "true" : "false")
       << ",\"v_convenient\":" << (data.v_convenient ? "true" : "false") << ",\"vertices\":[";
    for (std::size_t i = 0; i < data.boundary_vertices.size(); ++i) {
        if (i) os << ",";
        os << "[" << data.boundary_vertices[i].first << "," << data.boundary_vertices[i].second
           << "]";
    }
    os << "]}";
    emit(out_path, os.str());
    return 0;
}

int plotdata(const std::string& loop_path, int grid, const std::string& out_path) {
    const Defaults defaults = load_defaults();
    if (grid <= 0) grid = env_grid(defaults.plot_grid);
    const LoopPoly g = looppoly_from_json(read_file(loop_path));
    emit(out_path, plotdata_csv(g, grid));
    return 0;
}

int symmetry_cmd(const std::string& word, const std::string& strand_file,
                 const std::string& out_path) {
    const Defaults defaults = load_defaults();
    const GeometricBraid B = load_braid(word, strand_file, defaults.grid);
    emit(out_path, symmetry_json(detect_symmetry(B)));
    return 0;
}

}  // namespace singforge::cmd
