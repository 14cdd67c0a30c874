#include "boburl/model_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "boburl/errors.hpp"

namespace boburl {

namespace {

constexpr std::string_view kMagicLine = "BOBURL 1";

void append_real(std::string& out, double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, ptr);
}

void append_layer(std::string& out, const DenseLayer& layer) {
  out += "layer ";
  out += std::to_string(layer.out_dim());
  out += ' ';
  out += std::to_string(layer.in_dim());
  out += '\n';
  for (std::size_t i = 0; i < layer.out_dim(); ++i) {
    const double* row = layer.weights.row(i);
    for (std::size_t j = 0; j < layer.in_dim(); ++j) {
      if (j > 0) out += ' ';
      append_real(out, row[j]);
    }
    out += '\n';
  }
  for (std::size_t i = 0; i < layer.out_dim(); ++i) {
    if (i > 0) out += ' ';
    append_real(out, layer.bias[i]);
  }
  out += '\n';
}

// Pulls every whitespace-separated real off one line; errors carry the
// 1-based line number.
std::vector<double> parse_reals(const std::string& line, std::size_t line_no,
                                std::size_t expected) {
  std::vector<double> values;
  values.reserve(expected);
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p != end) {
    if (*p == ' ') {
      ++p;
      continue;
    }
    double v = 0.0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || !std::isfinite(v))
      throw DataError("model file line " + std::to_string(line_no) +
                      ": malformed real");
    values.push_back(v);
    p = next;
  }
  if (values.size() != expected)
    throw DataError("model file line " + std::to_string(line_no) + ": expected " +
                    std::to_string(expected) + " values, found " +
                    std::to_string(values.size()));
  return values;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(const char* what) {
    std::string line;
    if (!std::getline(in_, line))
      throw DataError("model file line " + std::to_string(line_no_ + 1) +
                      ": truncated, expected " + what);
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

DenseLayer read_layer(LineReader& reader) {
  std::string header = reader.next("layer header");
  std::size_t out_dim = 0, in_dim = 0;
  {
    std::istringstream fields(header);
    std::string tag;
    if (!(fields >> tag >> out_dim >> in_dim) || tag != "layer" ||
        out_dim == 0 || in_dim == 0)
      throw DataError("model file line " + std::to_string(reader.line_no()) +
                      ": bad layer header");
  }
  DenseLayer layer;
  layer.weights = Matrix(out_dim, in_dim);
  for (std::size_t i = 0; i < out_dim; ++i) {
    std::string line = reader.next("weight row");
    std::vector<double> row = parse_reals(line, reader.line_no(), in_dim);
    for (std::size_t j = 0; j < in_dim; ++j) layer.weights(i, j) = row[j];
  }
  std::string bias_line = reader.next("bias row");
  layer.bias = parse_reals(bias_line, reader.line_no(), out_dim);
  return layer;
}

}  // namespace

void save_model(const MlpModel& model, const std::filesystem::path& file) {
  std::string text;
  text.reserve(64 + 24 * (model.l1.weights.size() + model.l2.weights.size() +
                          model.l3.weights.size()));
  text += kMagicLine;
  text += "\ndropout ";
  append_real(text, model.dropout_ratio);
  text += '\n';
  append_layer(text, model.l1);
  append_layer(text, model.l2);
  append_layer(text, model.l3);

  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw DataError("cannot rename " + tmp.string() + " to " +
                          file.string() + ": " + ec.message());
}

MlpModel load_model(const std::filesystem::path& file, bool allow_any_dims) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw DataError("cannot read " + file.string());
  LineReader reader(in);

  if (reader.next("magic line") != kMagicLine)
    throw DataError("model file line 1: bad magic, expected \"" +
                    std::string(kMagicLine) + "\"");

  std::string dropout_line = reader.next("dropout line");
  MlpModel model;
  {
    const std::string prefix = "dropout ";
    if (dropout_line.rfind(prefix, 0) != 0)
      throw DataError("model file line 2: expected \"dropout <ratio>\"");
    std::vector<double> v =
        parse_reals(dropout_line.substr(prefix.size()), reader.line_no(), 1);
    model.dropout_ratio = v[0];
    if (model.dropout_ratio < 0.0 || model.dropout_ratio >= 1.0)
      throw DataError("model file line 2: dropout ratio out of [0, 1)");
  }

  model.l1 = read_layer(reader);
  model.l2 = read_layer(reader);
  model.l3 = read_layer(reader);

  if (model.l2.in_dim() != model.l1.out_dim() ||
      model.l3.in_dim() != model.l2.out_dim())
    throw DataError("model file: layer dimensions do not chain");
  if (!allow_any_dims && !model.has_canonical_dims())
    throw DataError("model file: dimensions are not 512/256/256/2 "
                    "(use allow_any_dims for toy models)");
  return model;
}

}  // namespace boburl
