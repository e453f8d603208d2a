#include "featsel/dataset.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

#include "featsel/rng.hpp"

namespace featsel {

// ---------------------------------------------------------------------------
// FeatureMatrix / LabeledDataset

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols,
                             std::vector<std::string> feature_names)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0),
      names_(std::move(feature_names)) {
  if (!names_.empty() && names_.size() != cols_)
    throw DimensionError("feature name count does not match column count");
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = values_[r * cols_ + c];
  return out;
}

FeatureMatrix FeatureMatrix::restrict_columns(
    std::span<const std::size_t> kept) const {
  std::vector<std::string> names;
  if (!names_.empty()) {
    names.reserve(kept.size());
    for (std::size_t c : kept) names.push_back(names_[c]);
  }
  FeatureMatrix out(rows_, kept.size(), std::move(names));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < kept.size(); ++j)
      out.at(r, j) = at(r, kept[j]);
  return out;
}

FeatureMatrix FeatureMatrix::select_rows(
    std::span<const std::size_t> rows) const {
  FeatureMatrix out(rows.size(), cols_, names_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) out.at(i, c) = at(rows[i], c);
  return out;
}

std::vector<std::size_t> LabeledDataset::category_counts() const {
  std::vector<std::size_t> counts(categories.size(), 0);
  for (int l : labels) counts[static_cast<std::size_t>(l)]++;
  return counts;
}

LabeledDataset select_rows(const LabeledDataset& ds,
                           std::span<const std::size_t> rows) {
  LabeledDataset out;
  out.matrix = ds.matrix.select_rows(rows);
  out.categories = ds.categories;
  out.labels.reserve(rows.size());
  out.subcategories.reserve(rows.size());
  for (std::size_t r : rows) {
    out.labels.push_back(ds.labels[r]);
    out.subcategories.push_back(ds.subcategories[r]);
  }
  return out;
}

LabeledDataset drop_empty_categories(const LabeledDataset& ds) {
  const auto counts = ds.category_counts();
  std::vector<int> remap(ds.categories.size(), -1);
  LabeledDataset out;
  out.matrix = ds.matrix;
  out.subcategories = ds.subcategories;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > 0) {
      remap[c] = static_cast<int>(out.categories.size());
      out.categories.push_back(ds.categories[c]);
    }
  }
  out.labels.reserve(ds.labels.size());
  for (int l : ds.labels) out.labels.push_back(remap[static_cast<std::size_t>(l)]);
  return out;
}

// ---------------------------------------------------------------------------
// KDD parsing

const std::vector<std::string>& kdd_feature_names() {
  static const std::vector<std::string> names = {
      "duration", "protocol_type", "service", "flag", "src_bytes",
      "dst_bytes", "land", "wrong_fragment", "urgent", "hot",
      "num_failed_logins", "logged_in", "num_compromised", "root_shell",
      "su_attempted", "num_root", "num_file_creations", "num_shells",
      "num_access_files", "num_outbound_cmds", "is_host_login",
      "is_guest_login", "count", "srv_count", "serror_rate",
      "srv_serror_rate", "rerror_rate", "srv_rerror_rate", "same_srv_rate",
      "diff_srv_rate", "srv_diff_host_rate", "dst_host_count",
      "dst_host_srv_count", "dst_host_same_srv_rate",
      "dst_host_diff_srv_rate", "dst_host_same_src_port_rate",
      "dst_host_srv_diff_host_rate", "dst_host_serror_rate",
      "dst_host_srv_serror_rate", "dst_host_rerror_rate",
      "dst_host_srv_rerror_rate"};
  return names;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_numeric_field(std::string_view field, std::size_t column,
                           std::size_t line_number) {
  field = trim(field);
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("non-numeric value '" + std::string(field) +
                         "' in numeric column " + std::to_string(column + 1),
                     line_number);
  }
  return value;
}

bool is_symbolic_column(std::size_t column) {
  return column == kKddSymbolicColumns[0] || column == kKddSymbolicColumns[1] ||
         column == kKddSymbolicColumns[2];
}

}  // namespace

KddRecord parse_kdd_record(std::string_view line, std::size_t line_number) {
  KddRecord record;
  std::size_t field_index = 0;
  std::size_t start = 0;
  std::size_t symbolic_slot = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    const std::string_view field =
        comma == std::string_view::npos
            ? line.substr(start)
            : line.substr(start, comma - start);
    if (field_index < kKddFeatureCount) {
      if (is_symbolic_column(field_index)) {
        record.symbolic[symbolic_slot++] = std::string(trim(field));
      } else {
        record.numeric[field_index] =
            parse_numeric_field(field, field_index, line_number);
      }
    } else if (field_index == kKddFeatureCount) {
      std::string_view label = trim(field);
      if (!label.empty() && label.back() == '.') label.remove_suffix(1);
      record.subcategory = std::string(label);
    }
    ++field_index;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (field_index != kKddFeatureCount + 1) {
    throw ParseError("expected 42 comma-separated fields, found " +
                         std::to_string(field_index),
                     line_number);
  }
  return record;
}

std::vector<KddRecord> read_kdd_records(const std::string& path) {
  // gzopen reads both gzip-compressed and plain files transparently.
  gzFile file = gzopen(path.c_str(), "rb");
  if (file == nullptr) throw IoError("cannot open input file: " + path);

  std::vector<KddRecord> records;
  std::string pending;
  std::size_t line_number = 0;
  char buffer[1 << 16];
  auto consume_line = [&](std::string_view line) {
    ++line_number;
    line = trim(line);
    if (line.empty()) return;
    records.push_back(parse_kdd_record(line, line_number));
  };
  int n = 0;
  while ((n = gzread(file, buffer, sizeof(buffer))) > 0) {
    std::string_view chunk(buffer, static_cast<std::size_t>(n));
    std::size_t start = 0;
    while (true) {
      const std::size_t nl = chunk.find('\n', start);
      if (nl == std::string_view::npos) {
        pending.append(chunk.substr(start));
        break;
      }
      if (pending.empty()) {
        consume_line(chunk.substr(start, nl - start));
      } else {
        pending.append(chunk.substr(start, nl - start));
        consume_line(pending);
        pending.clear();
      }
      start = nl + 1;
    }
  }
  if (n < 0) {
    int errnum = 0;
    const char* msg = gzerror(file, &errnum);
    std::string detail = msg != nullptr ? msg : "read error";
    gzclose(file);
    throw IoError("error reading " + path + ": " + detail);
  }
  gzclose(file);
  if (!pending.empty()) consume_line(pending);
  return records;
}

// ---------------------------------------------------------------------------
// Category map

CategoryMap CategoryMap::builtin() {
  CategoryMap map;
  map.categories_ = {"normal", "dos", "probe", "r2l", "u2r"};
  const std::pair<const char*, int> entries[] = {
      {"normal", 0},
      // dos
      {"smurf", 1}, {"neptune", 1}, {"back", 1}, {"teardrop", 1}, {"pod", 1},
      {"land", 1},
      // probe
      {"satan", 2}, {"ipsweep", 2}, {"portsweep", 2}, {"nmap", 2},
      // r2l
      {"warezclient", 3}, {"guess_passwd", 3}, {"warezmaster", 3}, {"imap", 3},
      {"ftp_write", 3}, {"multihop", 3}, {"phf", 3}, {"spy", 3},
      // u2r
      {"buffer_overflow", 4}, {"rootkit", 4}, {"loadmodule", 4}, {"perl", 4}};
  for (const auto& [name, cat] : entries) map.map_.emplace(name, cat);
  return map;
}

CategoryMap CategoryMap::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open category map: " + path);
  CategoryMap map;
  map.categories_ = {"normal", "dos", "probe", "r2l", "u2r"};
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const std::size_t comma = view.find(',');
    if (comma == std::string_view::npos)
      throw ParseError("expected 'subcategory,category'", line_number);
    const std::string sub{trim(view.substr(0, comma))};
    const std::string cat{trim(view.substr(comma + 1))};
    if (sub.empty() || cat.empty())
      throw ParseError("empty subcategory or category name", line_number);
    auto it = std::find(map.categories_.begin(), map.categories_.end(), cat);
    int cat_id;
    if (it == map.categories_.end()) {
      cat_id = static_cast<int>(map.categories_.size());
      map.categories_.push_back(cat);
    } else {
      cat_id = static_cast<int>(it - map.categories_.begin());
    }
    map.map_[sub] = cat_id;
  }
  if (map.map_.empty()) throw ParseError("category map is empty: " + path);
  return map;
}

int CategoryMap::category_of(const std::string& subcategory) const {
  auto it = map_.find(subcategory);
  if (it == map_.end())
    throw ArgumentError("unknown subcategory '" + subcategory + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// Symbolic encoding

CategoricalEncoder CategoricalEncoder::fit(
    const std::vector<std::vector<std::string>>& columns) {
  CategoricalEncoder encoder;
  encoder.vocab_.reserve(columns.size());
  for (const auto& column : columns) {
    std::vector<std::string> vocab = column;
    std::sort(vocab.begin(), vocab.end());
    vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
    encoder.vocab_.push_back(std::move(vocab));
  }
  return encoder;
}

std::size_t CategoricalEncoder::encode(std::size_t column,
                                       const std::string& value) const {
  const auto& vocab = vocab_[column];
  auto it = std::lower_bound(vocab.begin(), vocab.end(), value);
  if (it == vocab.end() || *it != value)
    throw ArgumentError("value '" + value + "' not in vocabulary of column " +
                        std::to_string(column));
  return static_cast<std::size_t>(it - vocab.begin());
}

const std::string& CategoricalEncoder::decode(std::size_t column,
                                              std::size_t code) const {
  const auto& vocab = vocab_[column];
  if (code >= vocab.size())
    throw ArgumentError("code " + std::to_string(code) +
                        " out of range for column " + std::to_string(column));
  return vocab[code];
}

CategoricalEncoder fit_encoder(const std::vector<KddRecord>& records) {
  std::vector<std::vector<std::string>> columns(kKddSymbolicColumns.size());
  for (auto& c : columns) c.reserve(records.size());
  for (const auto& record : records)
    for (std::size_t s = 0; s < kKddSymbolicColumns.size(); ++s)
      columns[s].push_back(record.symbolic[s]);
  return CategoricalEncoder::fit(columns);
}

FeatureMatrix encode_symbolic(const std::vector<KddRecord>& records,
                              const CategoricalEncoder& encoder) {
  FeatureMatrix matrix(records.size(), kKddFeatureCount, kdd_feature_names());
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& record = records[r];
    for (std::size_t c = 0; c < kKddFeatureCount; ++c)
      matrix.at(r, c) = record.numeric[c];
    for (std::size_t s = 0; s < kKddSymbolicColumns.size(); ++s)
      matrix.at(r, kKddSymbolicColumns[s]) =
          static_cast<double>(encoder.encode(s, record.symbolic[s]));
  }
  return matrix;
}

LabeledDataset dataset_from_records(const std::vector<KddRecord>& records,
                                    const CategoryMap& map) {
  LabeledDataset ds;
  ds.categories = map.categories();
  ds.labels.reserve(records.size());
  ds.subcategories.reserve(records.size());
  for (const auto& record : records) {
    ds.labels.push_back(map.category_of(record.subcategory));
    ds.subcategories.push_back(record.subcategory);
  }
  ds.matrix = encode_symbolic(records, fit_encoder(records));
  return ds;
}

LabeledDataset load_kdd(const std::string& path, const CategoryMap& map) {
  return dataset_from_records(read_kdd_records(path), map);
}

// ---------------------------------------------------------------------------
// Normalization

NormalizerParams fit_minmax(const FeatureMatrix& matrix) {
  if (matrix.empty()) throw ArgumentError("cannot fit normalizer on empty matrix");
  NormalizerParams params;
  params.min.assign(matrix.cols(), 0.0);
  params.max.assign(matrix.cols(), 0.0);
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    double lo = matrix.at(0, c);
    double hi = lo;
    for (std::size_t r = 1; r < matrix.rows(); ++r) {
      const double v = matrix.at(r, c);
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
    params.min[c] = lo;
    params.max[c] = hi;
  }
  return params;
}

FeatureMatrix apply_minmax(const FeatureMatrix& matrix,
                           const NormalizerParams& params) {
  if (params.size() != matrix.cols())
    throw DimensionError("normalizer fitted over " +
                         std::to_string(params.size()) + " features, matrix has " +
                         std::to_string(matrix.cols()));
  FeatureMatrix out(matrix.rows(), matrix.cols(), matrix.feature_names());
  for (std::size_t c = 0; c < matrix.cols(); ++c) {
    const double lo = params.min[c];
    const double range = params.max[c] - lo;
    for (std::size_t r = 0; r < matrix.rows(); ++r)
      out.at(r, c) = range == 0.0 ? 0.0 : (matrix.at(r, c) - lo) / range;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Folds and subsampling

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i)
    if (assignments[i] == fold) out.push_back(i);
  return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i)
    if (assignments[i] != fold) out.push_back(i);
  return out;
}

FoldPlan stratified_folds(std::span<const int> labels, std::size_t n_folds,
                          std::uint64_t seed) {
  if (n_folds < 2) throw ArgumentError("n_folds must be at least 2");
  if (labels.size() < n_folds)
    throw ArgumentError("fewer samples than folds");
  int max_label = 0;
  for (int l : labels) max_label = std::max(max_label, l);
  std::vector<std::vector<std::size_t>> by_category(
      static_cast<std::size_t>(max_label) + 1);
  for (std::size_t i = 0; i < labels.size(); ++i)
    by_category[static_cast<std::size_t>(labels[i])].push_back(i);

  FoldPlan plan;
  plan.n_folds = n_folds;
  plan.assignments.assign(labels.size(), 0);
  std::mt19937_64 rng(seed);
  for (auto& members : by_category) {
    deterministic_shuffle(members, rng);
    for (std::size_t pos = 0; pos < members.size(); ++pos)
      plan.assignments[members[pos]] = pos % n_folds;
  }
  return plan;
}

FoldPlan round_robin_folds(std::size_t n_samples, std::size_t n_folds,
                           std::uint64_t seed) {
  if (n_folds < 2) throw ArgumentError("n_folds must be at least 2");
  if (n_samples < n_folds) throw ArgumentError("fewer samples than folds");
  std::vector<std::size_t> order(n_samples);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  deterministic_shuffle(order, rng);
  FoldPlan plan;
  plan.n_folds = n_folds;
  plan.assignments.assign(n_samples, 0);
  for (std::size_t pos = 0; pos < n_samples; ++pos)
    plan.assignments[order[pos]] = pos % n_folds;
  return plan;
}

LabeledDataset stratified_subsample(const LabeledDataset& ds,
                                    std::size_t target_n, std::uint64_t seed) {
  const std::size_t n = ds.size();
  if (target_n > n) throw ArgumentError("subsample target exceeds dataset size");
  if (target_n == n) return ds;

  const auto counts = ds.category_counts();
  std::size_t nonempty = 0;
  for (std::size_t c : counts) nonempty += c > 0 ? 1 : 0;
  if (target_n < nonempty)
    throw ArgumentError("subsample target smaller than number of categories");

  // Largest-remainder quota per category, then force >= 1 per nonempty one.
  const std::size_t k = counts.size();
  std::vector<std::size_t> quota(k, 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    const double exact = static_cast<double>(target_n) *
                         static_cast<double>(counts[c]) /
                         static_cast<double>(n);
    quota[c] = static_cast<std::size_t>(exact);
    assigned += quota[c];
    remainders.emplace_back(exact - static_cast<double>(quota[c]), c);
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t i = 0; assigned < target_n; i = (i + 1) % remainders.size()) {
    const std::size_t c = remainders[i].second;
    if (quota[c] < counts[c]) {
      ++quota[c];
      ++assigned;
    }
  }
  // Guarantee one row per nonempty category, borrowing from the largest quota.
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0 || quota[c] > 0) continue;
    std::size_t donor = k;
    for (std::size_t d = 0; d < k; ++d)
      if (quota[d] > 1 && (donor == k || quota[d] > quota[donor])) donor = d;
    if (donor == k) throw ArgumentError("subsample target too small to cover categories");
    --quota[donor];
    quota[c] = 1;
  }

  std::vector<std::vector<std::size_t>> by_category(k);
  for (std::size_t i = 0; i < n; ++i)
    by_category[static_cast<std::size_t>(ds.labels[i])].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> chosen;
  chosen.reserve(target_n);
  for (std::size_t c = 0; c < k; ++c) {
    auto& members = by_category[c];
    deterministic_shuffle(members, rng);
    for (std::size_t i = 0; i < quota[c]; ++i) chosen.push_back(members[i]);
  }
  std::sort(chosen.begin(), chosen.end());
  return select_rows(ds, chosen);
}

}  // namespace featsel
