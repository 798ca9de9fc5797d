#include "aggan/oversample.hpp"

#include <algorithm>

#include "aggan/error.hpp"
#include "aggan/trainer.hpp"

namespace aggan {

Matrix generate_minority(const MLPSpec& g_spec, const ParamSet& g,
                         Index n_needed, std::uint64_t seed) {
  if (n_needed < 0) throw ArgumentError("generate_minority: n_needed < 0");
  Rng rng(derive_seed(seed, "oversample.generate"));
  if (n_needed == 0) return Matrix(0, g_spec.output_dim());
  return sample_generator(g_spec, g, n_needed, rng);
}

namespace {

Dataset append_rows(const Dataset& base, const Matrix& rows, int label,
                    const std::string& provenance) {
  Dataset out;
  out.features.resize(base.rows() + rows.rows(), base.dim());
  out.features.topRows(base.rows()) = base.features;
  out.features.bottomRows(rows.rows()) = rows;
  out.labels = base.labels;
  out.labels.insert(out.labels.end(), static_cast<std::size_t>(rows.rows()),
                    label);
  out.classes = base.classes;
  out.provenance = provenance;
  return out;
}

Index majority_count(const Dataset& data) {
  Index best = 0;
  for (int c : data.classes) best = std::max(best, data.class_count(c));
  return best;
}

}  // namespace

Dataset oversample_with_generator(const Dataset& train, const MLPSpec& g_spec,
                                  const ParamSet& g, int minority_class,
                                  std::uint64_t seed) {
  train.validate();
  if (g_spec.output_dim() != train.dim())
    throw ArgumentError("oversample: generator output does not match data dim");
  const Index majority = majority_count(train);
  const Index have = train.class_count(minority_class);
  const Matrix synth = generate_minority(g_spec, g, majority - have, seed);
  return append_rows(train, synth, minority_class,
                     train.provenance + " +gan");
}

Dataset random_oversample(const Dataset& train, std::uint64_t seed) {
  train.validate();
  Rng rng(derive_seed(seed, "oversample.random"));
  const Index majority = majority_count(train);
  Dataset out = train;
  for (int c : train.classes) {
    const std::vector<Index> idx = train.indices_of(c);
    const Index missing = majority - static_cast<Index>(idx.size());
    if (missing <= 0) continue;
    Matrix extra(missing, train.dim());
    for (Index i = 0; i < missing; ++i)
      extra.row(i) = train.features.row(
          idx[rng.uniform_int(static_cast<std::int64_t>(idx.size()))]);
    out = append_rows(out, extra, c, out.provenance);
  }
  out.provenance = train.provenance + " +ros";
  return out;
}

Dataset multiclass_balance(const Dataset& train,
                           const std::map<int, ClassGenerator>& generators,
                           std::uint64_t seed) {
  train.validate();
  const Index majority = majority_count(train);
  Dataset out = train;
  for (int c : train.classes) {
    const Index missing = majority - train.class_count(c);
    if (missing <= 0) continue;
    const auto it = generators.find(c);
    if (it == generators.end())
      throw ArgumentError("multiclass_balance: no generator for class " +
                          std::to_string(c));
    const Matrix synth =
        generate_minority(it->second.spec, it->second.params, missing,
                          derive_seed(seed, "oversample.class", c));
    out = append_rows(out, synth, c, out.provenance);
  }
  out.provenance = train.provenance + " +gan-multi";
  return out;
}

}  // namespace aggan
