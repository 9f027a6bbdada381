#include "notchlab/touchstone.hpp"

#include "notchlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

namespace notchlab {

namespace {

void write_double(std::ostream& out, double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

double unit_scale(const std::string& unit, long line) {
    if (unit == "HZ") return 1.0;
    if (unit == "KHZ") return 1e3;
    if (unit == "MHZ") return 1e6;
    if (unit == "GHZ") return 1e9;
    throw parse_error("unknown frequency unit '" + unit + "' on line " + std::to_string(line),
                      line);
}

std::complex<double> decode_pair(const std::string& format, double a, double b) {
    if (format == "RI")
        return {a, b};
    if (format == "MA")
        return std::polar(a, b * std::numbers::pi / 180.0);
    // DB: magnitude in dB, angle in degrees.
    return std::polar(std::pow(10.0, a / 20.0), b * std::numbers::pi / 180.0);
}

} // namespace

void write_touchstone(const FrequencyResponse& resp, std::ostream& out, bool stamp) {
    if (stamp) {
        const auto now = std::chrono::system_clock::now();
        out << "! generated " << std::chrono::duration_cast<std::chrono::seconds>(
                                     now.time_since_epoch())
                                     .count()
            << " (unix time)\n";
    }
    out << "# HZ S RI R ";
    write_double(out, resp.z_ref_ohm);
    out << "\n";

    for (Eigen::Index i = 0; i < resp.size(); ++i) {
        write_double(out, resp.freqs_hz(i));
        const std::complex<double> entries[4] = {resp.s11(i), resp.s21(i), resp.s12(i),
                                                 resp.s22(i)};
        for (const auto& s : entries) {
            out << ' ';
            write_double(out, s.real());
            out << ' ';
            write_double(out, s.imag());
        }
        out << "\n";
    }
}

void write_touchstone(const FrequencyResponse& resp, const std::filesystem::path& path,
                      bool stamp) {
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot open '" + path.string() + "' for writing");
    write_touchstone(resp, out, stamp);
    if (!out)
        throw io_error("failed writing '" + path.string() + "'");
}

TouchstoneDocument read_touchstone(std::istream& in, const std::string& origin) {
    TouchstoneDocument doc;
    bool have_options = false;
    std::vector<double> values;
    std::string line;
    long line_no = 0;
    long last_data_line = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (const auto bang = line.find('!'); bang != std::string::npos)
            line.erase(bang);
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first))
            continue;

        if (first == "#") {
            if (have_options)
                continue; // the standard ignores repeated option lines
            std::string token;
            std::string format = "MA";
            std::string unit = "GHZ";
            double z = 50.0;
            while (tokens >> token) {
                const std::string t = upper(token);
                if (t == "HZ" || t == "KHZ" || t == "MHZ" || t == "GHZ") {
                    unit = t;
                } else if (t == "S") {
                    // scattering parameters; the only supported type
                } else if (t == "Y" || t == "Z" || t == "H" || t == "G") {
                    throw parse_error(origin + ": only S-parameter files are supported (line " +
                                          std::to_string(line_no) + ")",
                                      line_no);
                } else if (t == "RI" || t == "MA" || t == "DB") {
                    format = t;
                } else if (t == "R") {
                    if (!(tokens >> z))
                        throw parse_error(origin + ": missing reference resistance on line " +
                                              std::to_string(line_no),
                                          line_no);
                } else {
                    throw parse_error(origin + ": unknown option '" + token + "' on line " +
                                          std::to_string(line_no),
                                      line_no);
                }
            }
            doc.options.freq_unit = unit;
            doc.options.format = format;
            doc.options.z_ref_ohm = z;
            have_options = true;
            continue;
        }

        // Data line: numbers only.
        std::istringstream data(line);
        double v = 0.0;
        while (data >> v)
            values.push_back(v);
        if (!data.eof())
            throw parse_error(origin + ": malformed number on line " + std::to_string(line_no),
                              line_no);
        last_data_line = line_no;
    }

    if (!have_options)
        throw parse_error(origin + ": missing option line", 1);
    if (values.empty())
        throw parse_error(origin + ": no data rows", last_data_line ? last_data_line : 1);
    if (values.size() % 9 != 0)
        throw parse_error(origin + ": two-port data must come in rows of 9 numbers; file ends " +
                              "mid-row near line " + std::to_string(last_data_line),
                          last_data_line);

    const double scale = unit_scale(doc.options.freq_unit, 1);
    const Eigen::Index rows = static_cast<Eigen::Index>(values.size() / 9);
    FrequencyResponse& resp = doc.response;
    resp.freqs_hz.resize(rows);
    resp.s11.resize(rows);
    resp.s21.resize(rows);
    resp.s12.resize(rows);
    resp.s22.resize(rows);
    resp.z_ref_ohm = doc.options.z_ref_ohm;

    for (Eigen::Index r = 0; r < rows; ++r) {
        const double* row = values.data() + 9 * r;
        resp.freqs_hz(r) = row[0] * scale;
        resp.s11(r) = decode_pair(doc.options.format, row[1], row[2]);
        resp.s21(r) = decode_pair(doc.options.format, row[3], row[4]);
        resp.s12(r) = decode_pair(doc.options.format, row[5], row[6]);
        resp.s22(r) = decode_pair(doc.options.format, row[7], row[8]);
        if (r > 0 && !(resp.freqs_hz(r) > resp.freqs_hz(r - 1)))
            throw parse_error(origin + ": frequencies must ascend (data row " +
                                  std::to_string(r + 1) + ")",
                              0);
    }
    return doc;
}

TouchstoneDocument read_touchstone(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open '" + path.string() + "'");
    return read_touchstone(in, path.string());
}

} // namespace notchlab
