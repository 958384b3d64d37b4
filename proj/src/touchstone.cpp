#include "rfladder/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rfladder/network.hpp"

namespace rfladder {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kDbFloor = -400.0;  // written for exact zeros in DB format

std::string to_upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::vector<std::string> split_tokens(std::string_view line) {
    std::vector<std::string> tokens;
    std::istringstream stream{std::string(line)};
    std::string token;
    while (stream >> token) {
        tokens.push_back(token);
    }
    return tokens;
}

double parse_double(const std::string& token, int line_no) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    if (begin != end && *begin == '+') {
        ++begin;  // from_chars rejects an explicit leading plus
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || begin == end) {
        throw ParseError(line_no, "expected a number, got \"" + token + "\"");
    }
    return value;
}

Complex decode_value(double first, double second, ValueFormat format) {
    switch (format) {
        case ValueFormat::RI:
            return Complex(first, second);
        case ValueFormat::MA:
            return std::polar(first, second * kDegToRad);
        case ValueFormat::DB:
            return std::polar(std::pow(10.0, first / 20.0), second * kDegToRad);
    }
    return Complex(0.0, 0.0);
}

std::pair<double, double> encode_value(Complex v, ValueFormat format) {
    switch (format) {
        case ValueFormat::RI:
            return {v.real(), v.imag()};
        case ValueFormat::MA:
            return {std::abs(v), std::arg(v) / kDegToRad};
        case ValueFormat::DB: {
            const double mag = std::abs(v);
            const double db = (mag > 0.0) ? 20.0 * std::log10(mag) : kDbFloor;
            return {db, std::arg(v) / kDegToRad};
        }
    }
    return {0.0, 0.0};
}

const char* unit_name(FreqUnit unit) {
    switch (unit) {
        case FreqUnit::Hz:
            return "Hz";
        case FreqUnit::kHz:
            return "kHz";
        case FreqUnit::MHz:
            return "MHz";
        case FreqUnit::GHz:
            return "GHz";
    }
    return "GHz";
}

const char* param_name(ParamKind p) {
    switch (p) {
        case ParamKind::S:
            return "S";
        case ParamKind::Y:
            return "Y";
        case ParamKind::Z:
            return "Z";
    }
    return "S";
}

const char* format_name(ValueFormat f) {
    switch (f) {
        case ValueFormat::RI:
            return "RI";
        case ValueFormat::MA:
            return "MA";
        case ValueFormat::DB:
            return "DB";
    }
    return "MA";
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct OptionLine {
    FreqUnit unit{FreqUnit::GHz};
    ParamKind parameter{ParamKind::S};
    ValueFormat format{ValueFormat::MA};
    double r_ref{50.0};
};

OptionLine parse_option_line(const std::vector<std::string>& tokens, int line_no) {
    OptionLine opt;
    size_t i = 1;  // tokens[0] == "#"
    while (i < tokens.size()) {
        const std::string token = to_upper(tokens[i]);
        if (token == "HZ") {
            opt.unit = FreqUnit::Hz;
        } else if (token == "KHZ") {
            opt.unit = FreqUnit::kHz;
        } else if (token == "MHZ") {
            opt.unit = FreqUnit::MHz;
        } else if (token == "GHZ") {
            opt.unit = FreqUnit::GHz;
        } else if (token == "S") {
            opt.parameter = ParamKind::S;
        } else if (token == "Y") {
            opt.parameter = ParamKind::Y;
        } else if (token == "Z") {
            opt.parameter = ParamKind::Z;
        } else if (token == "RI") {
            opt.format = ValueFormat::RI;
        } else if (token == "MA") {
            opt.format = ValueFormat::MA;
        } else if (token == "DB") {
            opt.format = ValueFormat::DB;
        } else if (token == "R") {
            if (i + 1 >= tokens.size()) {
                throw ParseError(line_no, "option line: R without a reference value");
            }
            opt.r_ref = parse_double(tokens[i + 1], line_no);
            if (!(opt.r_ref > 0.0)) {
                throw ParseError(line_no, "option line: reference impedance must be positive");
            }
            ++i;
        } else if (token == "G" || token == "H") {
            throw ParseError(line_no, "unsupported network parameter \"" + tokens[i] + "\"");
        } else {
            throw ParseError(line_no, "unrecognized option token \"" + tokens[i] + "\"");
        }
        ++i;
    }
    return opt;
}

}  // namespace

double freq_unit_scale(FreqUnit unit) {
    switch (unit) {
        case FreqUnit::Hz:
            return 1.0;
        case FreqUnit::kHz:
            return 1e3;
        case FreqUnit::MHz:
            return 1e6;
        case FreqUnit::GHz:
            return 1e9;
    }
    return 1.0;
}

void TouchstoneDocument::validate() const {
    if (n_ports != 1 && n_ports != 2) {
        throw ArityError("touchstone document must have 1 or 2 ports");
    }
    const Eigen::Index arity = (n_ports == 1) ? 1 : 4;
    if (values.cols() != arity || values.rows() != freq_hz.size()) {
        throw ArityError("touchstone rows must carry " + std::to_string(arity) +
                         " complex values per frequency");
    }
    for (Eigen::Index i = 0; i + 1 < freq_hz.size(); ++i) {
        if (!(freq_hz[i] < freq_hz[i + 1])) {
            throw OrderError("touchstone frequencies must be strictly increasing");
        }
    }
}

TouchstoneDocument parse_touchstone(std::string_view text, int n_ports) {
    if (n_ports != 1 && n_ports != 2) {
        throw ArityError("touchstone parser supports 1 or 2 ports");
    }
    const Eigen::Index arity = (n_ports == 1) ? 1 : 4;
    const size_t numbers_per_row = 1 + 2 * static_cast<size_t>(arity);

    TouchstoneDocument doc;
    doc.n_ports = n_ports;
    bool have_option_line = false;
    std::vector<double> freqs;
    std::vector<Complex> flat_values;

    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }

        // Full-line comments are preserved; inline comments are stripped.
        const size_t bang = line.find('!');
        if (bang != std::string_view::npos) {
            std::string_view before = line.substr(0, bang);
            const bool only_space = before.find_first_not_of(" \t") == std::string_view::npos;
            if (only_space) {
                doc.comments.emplace_back(line.substr(bang + 1));
                continue;
            }
            line = before;
        }

        const size_t first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos) {
            continue;
        }

        if (line[first] == '[') {
            throw ParseError(line_no, "Touchstone v2 keywords are not supported (v1.x only)");
        }

        if (line[first] == '#') {
            if (have_option_line) {
                throw ParseError(line_no, "duplicate option line");
            }
            std::string padded(line);
            padded.insert(first + 1, " ");  // tolerate "#GHz ..." style
            const OptionLine opt = parse_option_line(split_tokens(padded), line_no);
            doc.freq_unit = opt.unit;
            doc.parameter = opt.parameter;
            doc.format = opt.format;
            doc.r_ref = opt.r_ref;
            have_option_line = true;
            continue;
        }

        if (!have_option_line) {
            throw ParseError(line_no, "data before the option line (missing '#' line?)");
        }

        const std::vector<std::string> tokens = split_tokens(line);
        if (tokens.size() != numbers_per_row) {
            throw ArityError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(numbers_per_row) + " numbers per row, got " +
                             std::to_string(tokens.size()));
        }
        const double freq = parse_double(tokens[0], line_no) * freq_unit_scale(doc.freq_unit);
        if (!freqs.empty() && !(freq > freqs.back())) {
            throw OrderError("line " + std::to_string(line_no) +
                             ": frequencies must be strictly increasing");
        }
        freqs.push_back(freq);
        for (Eigen::Index k = 0; k < arity; ++k) {
            const double a = parse_double(tokens[1 + 2 * k], line_no);
            const double b = parse_double(tokens[2 + 2 * k], line_no);
            flat_values.push_back(decode_value(a, b, doc.format));
        }
    }

    if (!have_option_line) {
        throw ParseError(line_no, "missing option line");
    }

    doc.freq_hz = Eigen::Map<const Eigen::VectorXd>(freqs.data(), static_cast<Eigen::Index>(freqs.size()));
    doc.values.resize(static_cast<Eigen::Index>(freqs.size()), arity);
    for (Eigen::Index i = 0; i < doc.values.rows(); ++i) {
        for (Eigen::Index k = 0; k < arity; ++k) {
            doc.values(i, k) = flat_values[static_cast<size_t>(i * arity + k)];
        }
    }
    doc.validate();
    return doc;
}

TouchstoneDocument parse_touchstone_file(const std::filesystem::path& path) {
    std::string ext = to_upper(path.extension().string());
    int n_ports = 0;
    if (ext == ".S1P") {
        n_ports = 1;
    } else if (ext == ".S2P") {
        n_ports = 2;
    } else {
        throw ParseError(0, "unsupported extension \"" + path.extension().string() +
                                "\" (expected .s1p or .s2p)");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(0, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_touchstone(buf.str(), n_ports);
}

std::string write_touchstone(const TouchstoneDocument& doc) {
    doc.validate();
    std::string out;
    for (const std::string& comment : doc.comments) {
        out += "!" + comment + "\n";
    }
    out += "# ";
    out += unit_name(doc.freq_unit);
    out += " ";
    out += param_name(doc.parameter);
    out += " ";
    out += format_name(doc.format);
    out += " R ";
    out += format_number(doc.r_ref);
    out += "\n";

    const double scale = freq_unit_scale(doc.freq_unit);
    for (Eigen::Index i = 0; i < doc.freq_hz.size(); ++i) {
        out += format_number(doc.freq_hz[i] / scale);
        for (Eigen::Index k = 0; k < doc.values.cols(); ++k) {
            const auto [a, b] = encode_value(doc.values(i, k), doc.format);
            out += " ";
            out += format_number(a);
            out += " ";
            out += format_number(b);
        }
        out += "\n";
    }
    return out;
}

void write_touchstone_file(const TouchstoneDocument& doc, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("IoError", "cannot write " + path.string());
    }
    out << write_touchstone(doc);
}

FrequencySweep sweep_from_document(const TouchstoneDocument& doc) {
    doc.validate();
    FrequencySweep sweep(doc.freq_hz);
    if (doc.n_ports == 1) {
        if (doc.parameter == ParamKind::Z) {
            throw Unsupported("1-port Z-parameter documents are not supported");
        }
        if (doc.parameter == ParamKind::Y) {
            sweep.set_trace("Y", doc.values.col(0));
            return sweep;
        }
        Eigen::VectorXcd s11 = doc.values.col(0);
        Eigen::VectorXcd y(s11.size());
        for (Eigen::Index i = 0; i < s11.size(); ++i) {
            const Complex denom = doc.r_ref * (1.0 + s11[i]);
            if (std::abs(denom) < 1e-300) {
                throw SingularNetwork("S11 = -1 at " + std::to_string(doc.freq_hz[i]) +
                                      " Hz has no admittance");
            }
            y[i] = (1.0 - s11[i]) / denom;
        }
        sweep.set_trace("S11", std::move(s11));
        sweep.set_trace("Y", std::move(y));
        return sweep;
    }
    if (doc.parameter != ParamKind::S) {
        throw Unsupported("2-port documents are supported for S-parameters only");
    }
    sweep.set_trace("S11", doc.values.col(0));
    sweep.set_trace("S21", doc.values.col(1));
    sweep.set_trace("S12", doc.values.col(2));
    sweep.set_trace("S22", doc.values.col(3));
    return sweep;
}

TouchstoneDocument document_from_sweep(const FrequencySweep& sweep, int n_ports,
                                       const TouchstoneMeta& meta) {
    TouchstoneDocument doc;
    doc.n_ports = n_ports;
    doc.freq_unit = meta.freq_unit;
    doc.parameter = meta.parameter;
    doc.format = meta.format;
    doc.r_ref = meta.r_ref;
    doc.comments = meta.comments;
    doc.freq_hz = sweep.frequencies();

    if (n_ports == 1) {
        doc.values.resize(doc.freq_hz.size(), 1);
        if (meta.parameter == ParamKind::Y) {
            doc.values.col(0) = sweep.trace("Y");
        } else if (meta.parameter == ParamKind::S) {
            doc.values.col(0) = sweep.trace("S11");
        } else {
            throw Unsupported("1-port documents are written as S or Y only");
        }
    } else if (n_ports == 2) {
        if (meta.parameter != ParamKind::S) {
            throw Unsupported("2-port documents are written as S-parameters only");
        }
        doc.values.resize(doc.freq_hz.size(), 4);
        doc.values.col(0) = sweep.trace("S11");
        doc.values.col(1) = sweep.trace("S21");
        doc.values.col(2) = sweep.trace("S12");
        doc.values.col(3) = sweep.trace("S22");
    } else {
        throw ArityError("touchstone documents support 1 or 2 ports");
    }
    doc.validate();
    return doc;
}

}  // namespace rfladder
