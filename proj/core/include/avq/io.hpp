#pragma once

#include <string>

#include "avq/bounds.hpp"
#include "avq/channel.hpp"
#include "avq/code.hpp"
#include "avq/sim.hpp"
#include "avq/sym.hpp"

namespace avq {

// Document formats (JSON, UTF-8). A matrix is an array of rows, each entry
// a [re, im] pair of decimals; see the README for the field layout.

AVWC parse_avwc(const std::string& text);
std::string format_avwc(const AVWC& channel);

Correlation parse_correlation(const std::string& text);
std::string format_correlation(const Correlation& corr);

Code parse_code(const std::string& text);
std::string format_code(const Code& code);

CorrCode parse_corr_code(const std::string& text);

std::string format_witness(const SymWitness& witness, double residual, double tolerance);
std::string format_sym_result(const AVWC& channel, const SymResult& result);
std::string format_bound_report(const AVWC& channel, const BoundReport& report);
std::string format_dichotomy_report(const AVWC& channel, const DichotomyReport& report);
std::string format_worst_case(const AVWC& channel, const WorstCaseReport& report);

/// Flat key<TAB>value rendering of a report document, one line per leaf,
/// numbers with 9 significant digits. Suitable for diffing.
std::string report_to_tsv(const std::string& report_json);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

AVWC load_avwc(const std::string& path);
Correlation load_correlation(const std::string& path);
Code load_code(const std::string& path);
CorrCode load_corr_code(const std::string& path);

}  // namespace avq
