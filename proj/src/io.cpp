#include "singforge/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "singforge/errors.hpp"

namespace singforge {

using nlohmann::json;

std::string format_double(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::string num(double x) { return format_double(x); }

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error("invalid JSON input");
    return j;
}

}  // namespace

std::string to_json(const TrigPoly& a) {
    std::ostringstream os;
    os << "{\"freqs\":[";
    bool first = true;
    for (const auto& [l, c] : a.coeffs()) {
        if (!first) os << ",";
        first = false;
        os << "[" << l << "," << num(c.real()) << "," << num(c.imag()) << "]";
    }
    os << "]}";
    return os.str();
}

std::string to_json(const LoopPoly& g) {
    std::ostringstream os;
    os << "{\"coeffs\":[";
    for (int j = 0; j <= g.degree(); ++j) {
        if (j) os << ",";
        os << to_json(g.coeff(j));
    }
    os << "],\"degree\":" << g.degree() << "}";
    return os.str();
}

std::string to_json(const MixedPoly& f) {
    std::ostringstream os;
    os << "{\"terms\":[";
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        if (!first) os << ",";
        first = false;
        os << "[" << e[0] << "," << e[1] << "," << e[2] << "," << e[3] << ","
           << num(c.real()) << "," << num(c.imag()) << "]";
    }
    os << "]}";
    return os.str();
}

std::string to_json(const Certificate& c) {
    std::ostringstream os;
    os << "{\"check\":" << json(c.check).dump() << ",\"detail\":" << json(c.detail).dump()
       << ",\"grid\":" << c.grid << ",\"margin\":" << num(c.margin)
       << ",\"pass\":" << (c.pass() ? "true" : "false") << ",\"slack\":" << num(c.slack)
       << ",\"status\":\""
       << (c.status == Certificate::Status::Pass
               ? "pass"
               : c.status == Certificate::Status::Fail ? "fail" : "inconclusive")
       << "\",\"witnesses\":[";
    bool first = true;
    for (const auto& w : c.witnesses) {
        if (!first) os << ",";
        first = false;
        os << "[" << num(w.real()) << "," << num(w.imag()) << "]";
    }
    os << "]}";
    return os.str();
}

std::string to_json(const std::vector<Certificate>& cs) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) os << ",";
        os << to_json(cs[i]);
    }
    os << "]";
    return os.str();
}

namespace {

TrigPoly trigpoly_from(const json& j) {
    if (!j.is_object() || !j.contains("freqs") || !j["freqs"].is_array())
        throw Error("trig polynomial JSON must contain a \"freqs\" array");
    std::map<int, cplx> coeffs;
    for (const auto& row : j["freqs"]) {
        if (!row.is_array() || row.size() != 3) throw Error("freqs rows must be [l, re, im]");
        coeffs[row[0].get<int>()] += cplx(row[1].get<double>(), row[2].get<double>());
    }
    return TrigPoly(std::move(coeffs));
}

LoopPoly looppoly_from(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw Error("loop polynomial JSON must contain a \"coeffs\" array");
    std::vector<TrigPoly> coeffs;
    for (const auto& c : j["coeffs"]) coeffs.push_back(trigpoly_from(c));
    if (coeffs.empty()) throw Error("loop polynomial needs at least one coefficient");
    if (j.contains("degree") && j["degree"].get<int>() != static_cast<int>(coeffs.size()) - 1)
        throw Error("declared degree disagrees with the coefficient count");
    return LoopPoly(std::move(coeffs));
}

}  // namespace

TrigPoly trigpoly_from_json(const std::string& text) { return trigpoly_from(parse(text)); }

LoopPoly looppoly_from_json(const std::string& text) { return looppoly_from(parse(text)); }

MixedPoly mixedpoly_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw Error("mixed polynomial JSON must contain a \"terms\" array");
    std::map<ExpQuad, cplx> terms;
    for (const auto& row : j["terms"]) {
        if (!row.is_array() || row.size() != 6)
            throw Error("terms rows must be [mu1, mu2, nu1, nu2, re, im]");
        ExpQuad e{row[0].get<int>(), row[1].get<int>(), row[2].get<int>(), row[3].get<int>()};
        for (int x : e)
            if (x < 0) throw Error("negative exponent in mixed polynomial term");
        terms[e] += cplx(row[4].get<double>(), row[5].get<double>());
    }
    return MixedPoly(std::move(terms));
}

std::vector<PFiberData> sequence_from_json(const std::string& text) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("braids") || !j["braids"].is_array())
        throw Error("sequence JSON must contain a \"braids\" array");
    std::vector<PFiberData> seq;
    const auto& braids = j["braids"];
    for (std::size_t i = 0; i < braids.size(); ++i) {
        PFiberData d{looppoly_from(braids[i]), 0, TrigPoly::constant(cplx(1.0, 0.0)), {}};
        if (j.contains("o_mults") && i < j["o_mults"].size())
            d.o_mult = j["o_mults"][i].get<int>();
        if (j.contains("coefficients") && i < j["coefficients"].size())
            d.coefficient = trigpoly_from(j["coefficients"][i]);
        if (j.contains("multiplicities") && i < j["multiplicities"].size())
            for (const auto& m : j["multiplicities"][i]) d.multiplicities.push_back(m.get<int>());
        seq.push_back(std::move(d));
    }
    if (seq.empty()) throw Error("sequence JSON contains no braids");
    return seq;
}

std::string to_json(const std::vector<PFiberData>& seq) {
    std::ostringstream os;
    os << "{\"braids\":[";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) os << ",";
        os << to_json(seq[i].braid_loop);
    }
    os << "],\"coefficients\":[";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) os << ",";
        os << to_json(seq[i].coefficient);
    }
    os << "],\"o_mults\":[";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) os << ",";
        os << seq[i].o_mult;
    }
    os << "]}";
    return os.str();
}

std::string strands_to_csv(const GeometricBraid& B) {
    std::ostringstream os;
    os << "t,strand_id,re,im\n";
    for (int j = 0; j < B.strand_count(); ++j)
        for (int i = 0; i <= B.grid(); ++i) {
            const cplx u = B.at(j, i);
            os << num(B.t_at(i)) << "," << j << "," << num(u.real()) << "," << num(u.imag())
               << "\n";
        }
    return os.str();
}

GeometricBraid strands_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::map<int, std::vector<cplx>> strands;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.find("strand_id") != std::string::npos) continue;
        }
        std::istringstream row(line);
        std::string field;
        double vals[4];
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(row, field, ',')) throw Error("strand CSV row needs 4 fields");
            vals[k] = std::stod(field);
        }
        strands[static_cast<int>(vals[1])].push_back(cplx(vals[2], vals[3]));
    }
    if (strands.empty()) throw Error("strand CSV contains no samples");
    std::vector<std::vector<cplx>> list;
    for (auto& [id, samples] : strands) {
        if (samples.size() < 3) throw Error("strand CSV strand too short");
        list.push_back(std::move(samples));
    }
    const std::size_t n = list[0].size();
    for (const auto& s : list)
        if (s.size() != n) throw Error("strand CSV strands have unequal sample counts");
    // Closure by endpoint matching.
    std::vector<int> closure(list.size(), -1);
    std::vector<bool> taken(list.size(), false);
    for (std::size_t j = 0; j < list.size(); ++j) {
        double best = 1e300;
        int pick = -1;
        for (std::size_t k = 0; k < list.size(); ++k) {
            if (taken[k]) continue;
            const double d = std::abs(list[j].back() - list[k].front());
            if (d < best) {
                best = d;
                pick = static_cast<int>(k);
            }
        }
        closure[j] = pick;
        taken[pick] = true;
    }
    return GeometricBraid(std::move(list), std::move(closure));
}

std::string plotdata_csv(const LoopPoly& g, int grid) {
    const auto rows = root_grid(g, grid);
    const GeometricBraid B = track(g, grid);
    const auto comps = B.components();
    std::vector<int> circle_of(g.degree(), 0);
    std::vector<double> radius(comps.size(), 0.0);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        double sum = 0.0;
        std::size_t count = 0;
        for (int j : comps[c]) {
            circle_of[j] = static_cast<int>(c);
            for (int i = 0; i < B.grid(); ++i) sum += std::abs(B.at(j, i));
            count += B.grid();
        }
        radius[c] = count ? sum / static_cast<double>(count) : 0.0;
    }
    std::ostringstream os;
    os << "t,root_index,re,im,circle_radius,circle_index\n";
    const int n = static_cast<int>(rows.size()) - 1;
    for (int i = 0; i <= n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            const int c = circle_of[j];
            os << num(t) << "," << j << "," << num(rows[i][j].real()) << ","
               << num(rows[i][j].imag()) << "," << num(radius[c]) << "," << c << "\n";
        }
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

}  // namespace singforge
