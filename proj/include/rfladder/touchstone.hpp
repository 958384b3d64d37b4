#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "rfladder/errors.hpp"
#include "rfladder/sweep.hpp"

namespace rfladder {

enum class FreqUnit { Hz, kHz, MHz, GHz };
enum class ParamKind { S, Y, Z };
enum class ValueFormat { RI, MA, DB };

double freq_unit_scale(FreqUnit unit);

/// Touchstone v1.x document. Frequencies are stored in Hz and values as
/// rectangular complex numbers regardless of the file's unit/format fields,
/// which only control how the text is rendered. Two-port rows hold columns
/// in file order S11 S21 S12 S22.
struct TouchstoneDocument {
    int n_ports{1};  // 1 or 2
    FreqUnit freq_unit{FreqUnit::GHz};
    ParamKind parameter{ParamKind::S};
    ValueFormat format{ValueFormat::MA};
    double r_ref{50.0};
    std::vector<std::string> comments;  // without the leading '!'
    Eigen::VectorXd freq_hz;
    Eigen::MatrixXcd values;  // one row per frequency, 1 or 4 columns

    void validate() const;
};

/// Parse Touchstone text. The port count normally comes from the file
/// extension and is passed explicitly here.
TouchstoneDocument parse_touchstone(std::string_view text, int n_ports);

/// Parse from disk; .s1p/.s2p extension selects the port count.
TouchstoneDocument parse_touchstone_file(const std::filesystem::path& path);

/// Render a document: comments, option line, then data rows with 12
/// significant digits. parse(write(doc)) reproduces every numeric field to
/// well under 1 unit in the 9th significant digit.
std::string write_touchstone(const TouchstoneDocument& doc);

void write_touchstone_file(const TouchstoneDocument& doc, const std::filesystem::path& path);

/// Bridge to the internal sweep type. 1-port S documents also get a "Y"
/// trace via the one-port relation with r_ref; 1-port Y documents map
/// directly. Z documents (and non-S 2-port documents) are rejected.
FrequencySweep sweep_from_document(const TouchstoneDocument& doc);

struct TouchstoneMeta {
    FreqUnit freq_unit{FreqUnit::GHz};
    ParamKind parameter{ParamKind::S};
    ValueFormat format{ValueFormat::RI};
    double r_ref{50.0};
    std::vector<std::string> comments;
};

/// Inverse bridge: 1-port docs from a "Y" or "S11" trace, 2-port docs from
/// the four S traces.
TouchstoneDocument document_from_sweep(const FrequencySweep& sweep, int n_ports,
                                       const TouchstoneMeta& meta);

}  // namespace rfladder
