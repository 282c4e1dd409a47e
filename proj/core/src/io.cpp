#include "avq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace avq {

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw_parse(std::string("document is not valid JSON: ") + e.what());
  }
}

const json& require(const json& j, const std::string& key, const std::string& context) {
  if (!j.is_object() || !j.contains(key)) {
    throw_parse(context + ": missing field '" + key + "'");
  }
  return j.at(key);
}

std::vector<std::string> string_array(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) throw_parse(context + ": expected a nonempty array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw_parse(context + ": expected a string entry");
    out.push_back(v.get<std::string>());
  }
  return out;
}

CMatrix json_to_cmatrix(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) throw_parse(context + ": expected an array of matrix rows");
  const size_t rows = j.size();
  const size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
  if (cols == 0) throw_parse(context + ": empty matrix row");
  CMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || row.size() != cols) {
      throw_parse(context + ": ragged matrix rows");
    }
    for (size_t c = 0; c < cols; ++c) {
      const auto& e = row.at(c);
      if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() || !e.at(1).is_number()) {
        throw_parse(context + ": matrix entries must be [re, im] number pairs");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

json cmatrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd json_to_rmatrix(const json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) throw_parse(context + ": expected an array of rows");
  const size_t rows = j.size();
  const size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
  if (cols == 0) throw_parse(context + ": empty row");
  Eigen::MatrixXd m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || row.size() != cols) throw_parse(context + ": ragged rows");
    for (size_t c = 0; c < cols; ++c) {
      if (!row.at(c).is_number()) throw_parse(context + ": entries must be numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row.at(c).get<double>();
    }
  }
  return m;
}

json rmatrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CQChannel> parse_family(const json& map, const std::vector<std::string>& alphabet,
                                    const std::vector<std::string>& theta,
                                    const std::string& which) {
  if (!map.is_object()) throw_parse(which + ": expected a map from state to channel");
  std::vector<CQChannel> out;
  for (const auto& t : theta) {
    if (!map.contains(t)) throw_parse(which + ": missing channel for state '" + t + "'");
    const json& per_symbol = map.at(t);
    std::vector<DensityOp> states;
    for (const auto& a : alphabet) {
      const std::string context = which + "[" + t + "] symbol '" + a + "'";
      if (!per_symbol.is_object() || !per_symbol.contains(a)) {
        throw_parse(context + ": missing output state");
      }
      states.emplace_back(json_to_cmatrix(per_symbol.at(a), context), context);
    }
    out.emplace_back(alphabet, std::move(states), which + "[" + t + "]");
  }
  return out;
}

int infer_alphabet_size(const json& doc, int n, long long cols) {
  if (doc.contains("alphabet_size")) return doc.at("alphabet_size").get<int>();
  if (n == 0) {
    if (cols != 1) throw_parse("code: blocklength 0 requires a single encoder column");
    return 1;
  }
  const int guess = static_cast<int>(std::llround(std::pow(static_cast<double>(cols), 1.0 / n)));
  for (int k = std::max(1, guess - 1); k <= guess + 1; ++k) {
    long long p = 1;
    for (int i = 0; i < n; ++i) p *= k;
    if (p == cols) return k;
  }
  throw_parse("code: encoder has " + std::to_string(cols) +
              " columns, which is not a perfect n-th power of an alphabet size");
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    }
  } else if (j.is_array()) {
    bool scalar_only = true;
    for (const auto& v : j) {
      if (v.is_object() || v.is_array()) {
        scalar_only = false;
        break;
      }
    }
    if (scalar_only) {
      std::string joined;
      for (const auto& v : j) {
        if (!joined.empty()) joined += ",";
        joined += v.is_number_float() ? fmt9(v.get<double>())
                                      : v.dump();
      }
      out += prefix + "\t" + joined + "\n";
    } else {
      int idx = 0;
      for (const auto& v : j) flatten(v, prefix + "." + std::to_string(idx++), out);
    }
  } else if (j.is_number_float()) {
    out += prefix + "\t" + fmt9(j.get<double>()) + "\n";
  } else {
    out += prefix + "\t" + j.dump() + "\n";
  }
}

json bound_report_body(const BoundReport& report) {
  json body;
  body["value"] = report.value;
  body["clamped_value"] = report.clamped();
  body["legal_term"] = report.legal_term;
  body["leakage_term"] = report.leakage_term;
  body["leakage_order"] = report.leakage_order;
  body["argmax_P"] = report.argmax_P.probs();
  body["argmin_Q"] = report.argmin_Q.probs();
  body["grid_spec"] = report.grid_spec;
  return body;
}

std::vector<std::string> seq_labels(const std::vector<int>& seq,
                                    const std::vector<std::string>& labels) {
  std::vector<std::string> out;
  out.reserve(seq.size());
  for (int s : seq) out.push_back(labels[static_cast<size_t>(s)]);
  return out;
}

}  // namespace

AVWC parse_avwc(const std::string& text) {
  const json doc = parse_document(text);
  const std::string name = require(doc, "name", "channel").get<std::string>();
  const auto alphabet = string_array(require(doc, "alphabet", "channel"), "alphabet");
  const auto theta = string_array(require(doc, "theta", "channel"), "theta");
  auto legal = parse_family(require(doc, "legal", "channel"), alphabet, theta, "legal");
  auto wiretap = parse_family(require(doc, "wiretap", "channel"), alphabet, theta, "wiretap");
  return AVWC(name, alphabet, theta, std::move(legal), std::move(wiretap));
}

std::string format_avwc(const AVWC& channel) {
  json doc;
  doc["name"] = channel.name;
  doc["alphabet"] = channel.alphabet;
  doc["theta"] = channel.state_labels;
  for (int which = 0; which < 2; ++which) {
    const auto& family = which == 0 ? channel.legal : channel.wiretap;
    json map = json::object();
    for (size_t t = 0; t < family.size(); ++t) {
      json per_symbol = json::object();
      for (int a = 0; a < family[t].arity(); ++a) {
        per_symbol[channel.alphabet[static_cast<size_t>(a)]] =
            cmatrix_to_json(family[t].at(a).mat());
      }
      map[channel.state_labels[t]] = std::move(per_symbol);
    }
    doc[which == 0 ? "legal" : "wiretap"] = std::move(map);
  }
  return doc.dump(2) + "\n";
}

Correlation parse_correlation(const std::string& text) {
  const json doc = parse_document(text);
  const auto xs = string_array(require(doc, "x_alphabet", "correlation"), "x_alphabet");
  const auto ys = string_array(require(doc, "y_alphabet", "correlation"), "y_alphabet");
  Eigen::MatrixXd joint = json_to_rmatrix(require(doc, "joint", "correlation"), "joint");
  return Correlation(xs, ys, std::move(joint), "correlation");
}

std::string format_correlation(const Correlation& corr) {
  json doc;
  doc["x_alphabet"] = corr.x_alphabet;
  doc["y_alphabet"] = corr.y_alphabet;
  doc["joint"] = rmatrix_to_json(corr.joint);
  return doc.dump(2) + "\n";
}

Code parse_code(const std::string& text) {
  const json doc = parse_document(text);
  const int n = require(doc, "n", "code").get<int>();
  const int J = require(doc, "J", "code").get<int>();
  Eigen::MatrixXd encoder = json_to_rmatrix(require(doc, "encoder", "code"), "encoder");
  if (encoder.rows() != J) {
    throw_parse("code: declared J = " + std::to_string(J) + " but encoder has " +
                std::to_string(encoder.rows()) + " rows");
  }
  const json& dec = require(doc, "decoders", "code");
  if (!dec.is_array() || dec.empty()) throw_parse("code: decoders must be a nonempty array");
  std::vector<CMatrix> decoders;
  for (size_t j = 0; j < dec.size(); ++j) {
    decoders.push_back(json_to_cmatrix(dec.at(j), "decoder " + std::to_string(j)));
  }
  const int num_symbols = infer_alphabet_size(doc, n, encoder.cols());
  return Code(n, num_symbols, std::move(encoder), std::move(decoders), "code");
}

std::string format_code(const Code& code) {
  json doc;
  doc["n"] = code.n;
  doc["J"] = code.J;
  doc["alphabet_size"] = code.num_symbols;
  doc["encoder"] = rmatrix_to_json(code.encoder);
  json dec = json::array();
  for (const auto& d : code.decoders) dec.push_back(cmatrix_to_json(d));
  doc["decoders"] = std::move(dec);
  return doc.dump(2) + "\n";
}

CorrCode parse_corr_code(const std::string& text) {
  const json doc = parse_document(text);
  const int n = require(doc, "n", "corr-code").get<int>();
  const int J = require(doc, "J", "corr-code").get<int>();
  const auto xs = string_array(require(doc, "x_alphabet", "corr-code"), "x_alphabet");
  const auto ys = string_array(require(doc, "y_alphabet", "corr-code"), "y_alphabet");
  for (const auto& s : xs) {
    if (s.size() != 1) throw_parse("corr-code: x symbols must be single characters to key maps");
  }
  for (const auto& s : ys) {
    if (s.size() != 1) throw_parse("corr-code: y symbols must be single characters to key maps");
  }

  auto key_for = [](const std::vector<std::string>& alphabet, long long idx, int len) {
    std::string key;
    std::vector<int> digits(static_cast<size_t>(len), 0);
    for (int pos = len - 1; pos >= 0; --pos) {
      digits[static_cast<size_t>(pos)] = static_cast<int>(idx % alphabet.size());
      idx /= static_cast<long long>(alphabet.size());
    }
    for (int d : digits) key += alphabet[static_cast<size_t>(d)];
    return key;
  };

  const json& enc_map = require(doc, "encoders", "corr-code");
  const json& dec_map = require(doc, "decoders", "corr-code");

  long long nx = 1, ny = 1;
  for (int i = 0; i < n; ++i) nx *= static_cast<long long>(xs.size());
  for (int i = 0; i < n; ++i) ny *= static_cast<long long>(ys.size());

  std::vector<Eigen::MatrixXd> encoders;
  int num_symbols = -1;
  for (long long xi = 0; xi < nx; ++xi) {
    const std::string key = key_for(xs, xi, n);
    if (!enc_map.contains(key)) throw_parse("corr-code: missing encoder for x-sequence '" + key + "'");
    encoders.push_back(json_to_rmatrix(enc_map.at(key), "encoder '" + key + "'"));
    if (num_symbols < 0) num_symbols = infer_alphabet_size(doc, n, encoders.back().cols());
  }
  std::vector<std::vector<CMatrix>> decoders;
  for (long long yi = 0; yi < ny; ++yi) {
    const std::string key = key_for(ys, yi, n);
    if (!dec_map.contains(key)) throw_parse("corr-code: missing decoders for y-sequence '" + key + "'");
    const json& povm = dec_map.at(key);
    if (!povm.is_array() || static_cast<int>(povm.size()) != J) {
      throw_parse("corr-code: decoder set '" + key + "' must list exactly J matrices");
    }
    std::vector<CMatrix> set;
    for (size_t j = 0; j < povm.size(); ++j) {
      set.push_back(json_to_cmatrix(povm.at(j), "decoders '" + key + "' entry " + std::to_string(j)));
    }
    decoders.push_back(std::move(set));
  }
  return CorrCode(n, num_symbols, static_cast<int>(xs.size()), static_cast<int>(ys.size()),
                  std::move(encoders), std::move(decoders), "corr-code");
}

std::string format_witness(const SymWitness& witness, double res, double tolerance) {
  json doc;
  doc["tau"] = rmatrix_to_json(witness.tau);
  doc["residual"] = res;
  doc["tolerance"] = tolerance;
  return doc.dump(2) + "\n";
}

std::string format_sym_result(const AVWC& channel, const SymResult& result) {
  json doc;
  doc["channel"] = channel.name;
  doc["symmetrizable"] = result.symmetrizable;
  doc["residual"] = result.residual;
  doc["tolerance"] = result.tolerance;
  if (result.witness) {
    doc["witness"] = rmatrix_to_json(result.witness->tau);
  } else {
    doc["witness"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string format_bound_report(const AVWC& channel, const BoundReport& report) {
  json doc = bound_report_body(report);
  doc["channel"] = channel.name;
  return doc.dump(2) + "\n";
}

std::string format_dichotomy_report(const AVWC& channel, const DichotomyReport& report) {
  json doc;
  doc["channel"] = channel.name;
  doc["symmetrizable"] = report.symmetrizable;
  doc["sym_residual"] = report.sym_residual;
  doc["deterministic_secrecy_lb"] = report.deterministic_secrecy_lb;
  doc["random_lb"] = bound_report_body(report.random_lb);
  return doc.dump(2) + "\n";
}

std::string format_worst_case(const AVWC& channel, const WorstCaseReport& report) {
  json doc;
  doc["channel"] = channel.name;
  doc["exact"] = report.exact;
  doc["evaluated"] = report.evaluated;
  doc["max_error"] = report.max_error;
  doc["argmax_error_seq"] = seq_labels(report.argmax_error_seq, channel.state_labels);
  doc["max_leakage"] = report.max_leakage;
  doc["argmax_leakage_seq"] = seq_labels(report.argmax_leakage_seq, channel.state_labels);
  if (!report.exact) doc["note"] = "sampled sweep: maxima are lower bounds on the true worst case";
  return doc.dump(2) + "\n";
}

std::string report_to_tsv(const std::string& report_json) {
  const json doc = parse_document(report_json);
  std::string out;
  flatten(doc, "", out);
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_parse("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_parse("cannot write file: " + path);
  out << content;
}

AVWC load_avwc(const std::string& path) { return parse_avwc(read_text_file(path)); }
Correlation load_correlation(const std::string& path) {
  return parse_correlation(read_text_file(path));
}
Code load_code(const std::string& path) { return parse_code(read_text_file(path)); }
CorrCode load_corr_code(const std::string& path) { return parse_corr_code(read_text_file(path)); }

}  // namespace avq
