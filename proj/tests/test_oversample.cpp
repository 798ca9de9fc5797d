#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aggan/error.hpp"
#include "aggan/oversample.hpp"
#include "aggan/trainer.hpp"

using namespace aggan;

namespace {

MLPSpec tiny_generator() {
  return MLPSpec::dense({2, 8, 2}, Hidden::Relu, Output::Identity);
}

Dataset imbalanced_toy(Index majority, Index minority, std::uint64_t seed) {
  Rng rng(seed);
  Dataset data;
  data.features = rng.normal_matrix(majority + minority, 2);
  for (Index i = 0; i < majority; ++i) data.labels.push_back(0);
  for (Index i = 0; i < minority; ++i) data.labels.push_back(1);
  data.classes = {0, 1};
  return data;
}

}  // namespace

TEST_CASE("generate_minority: zero rows requested") {
  Rng rng(1);
  const MLPSpec spec = tiny_generator();
  const ParamSet g = init_params(spec, rng);
  CHECK(generate_minority(spec, g, 0, 7).rows() == 0);
}

TEST_CASE("oversample_with_generator restores exact balance") {
  Rng rng(2);
  const MLPSpec spec = tiny_generator();
  const ParamSet g = init_params(spec, rng);
  const Dataset train = imbalanced_toy(500, 5, 3);
  const Dataset balanced = oversample_with_generator(train, spec, g, 1, 11);
  CHECK(balanced.class_count(0) == 500);
  CHECK(balanced.class_count(1) == 500);
  CHECK(balanced.rows() == 1000);
  // the original rows are untouched at the front
  CHECK(balanced.features.topRows(train.rows()) == train.features);
}

TEST_CASE("oversample_with_generator: already balanced input is unchanged") {
  Rng rng(4);
  const MLPSpec spec = tiny_generator();
  const ParamSet g = init_params(spec, rng);
  const Dataset train = imbalanced_toy(50, 50, 5);
  const Dataset out = oversample_with_generator(train, spec, g, 1, 12);
  CHECK(out.rows() == train.rows());
}

TEST_CASE("synthetic rows are seed-deterministic and seed-sensitive") {
  Rng rng(6);
  const MLPSpec spec = tiny_generator();
  const ParamSet g = init_params(spec, rng);
  const Matrix a = generate_minority(spec, g, 20, 42);
  const Matrix b = generate_minority(spec, g, 20, 42);
  const Matrix c = generate_minority(spec, g, 20, 43);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("random_oversample balances by replication") {
  const Dataset train = imbalanced_toy(200, 10, 7);
  const Dataset balanced = random_oversample(train, 13);
  CHECK(balanced.class_count(0) == 200);
  CHECK(balanced.class_count(1) == 200);
  // every synthetic row replicates an original minority row
  const Matrix minority = train.rows_of(1);
  for (Index i = train.rows(); i < balanced.rows(); ++i) {
    bool found = false;
    for (Index j = 0; j < minority.rows(); ++j)
      if (balanced.features.row(i) == minority.row(j)) found = true;
    CHECK(found);
  }
}

TEST_CASE("multiclass_balance raises every class to the majority") {
  Rng rng(8);
  const MLPSpec spec = tiny_generator();
  Dataset train;
  train.features = rng.normal_matrix(160, 2);
  for (Index i = 0; i < 100; ++i) train.labels.push_back(0);
  for (Index i = 0; i < 50; ++i) train.labels.push_back(1);
  for (Index i = 0; i < 10; ++i) train.labels.push_back(2);
  train.classes = {0, 1, 2};

  std::map<int, ClassGenerator> gens;
  gens[1] = {spec, init_params(spec, rng)};
  gens[2] = {spec, init_params(spec, rng)};
  const Dataset balanced = multiclass_balance(train, gens, 17);
  CHECK(balanced.class_count(0) == 100);
  CHECK(balanced.class_count(1) == 100);
  CHECK(balanced.class_count(2) == 100);

  gens.erase(2);
  CHECK_THROWS_WITH_AS(multiclass_balance(train, gens, 17),
                       doctest::Contains("class 2"), ArgumentError);
}

TEST_CASE("multiclass_balance: balanced input needs no generator") {
  Rng rng(9);
  Dataset train;
  train.features = rng.normal_matrix(60, 2);
  for (Index i = 0; i < 30; ++i) train.labels.push_back(0);
  for (Index i = 0; i < 30; ++i) train.labels.push_back(1);
  train.classes = {0, 1};
  const Dataset out = multiclass_balance(train, {}, 1);
  CHECK(out.rows() == 60);
}
