#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "aggan/checkpoint.hpp"
#include "aggan/error.hpp"
#include "oracle.hpp"

using namespace aggan;
using namespace aggan::testing;

namespace {

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("checkpoint round-trips bit-exactly") {
  Rng rng(31);
  const MLPSpec spec =
      MLPSpec::dense({2, 16, 16, 2}, Hidden::LeakyRelu, Output::Identity);
  const ParamSet params = init_params(spec, rng);
  const std::string path = temp_file("aggan_ckpt_roundtrip.params");
  save_params(path, spec, params);
  const ParamSet loaded = load_params(path, spec);
  CHECK(bit_equal(params, loaded));
}

TEST_CASE("checkpoint header carries widths and activations") {
  const MLPSpec spec =
      MLPSpec::dense({3, 8, 1}, Hidden::Relu, Output::Sigmoid);
  CHECK(spec_header(spec) == "aggan-params v1 3,8,1 relu,sigmoid");
  CHECK(spec_from_header(spec_header(spec)) == spec);

  const MLPSpec leaky =
      MLPSpec::dense({2, 4, 2}, Hidden::LeakyRelu, Output::Identity, 0.2);
  CHECK(spec_from_header(spec_header(leaky)) == leaky);
}

TEST_CASE("loading validates the spec") {
  Rng rng(5);
  const MLPSpec spec = MLPSpec::dense({2, 4, 1}, Hidden::Relu, Output::Sigmoid);
  const std::string path = temp_file("aggan_ckpt_spec.params");
  save_params(path, spec, init_params(spec, rng));

  const MLPSpec other = MLPSpec::dense({2, 5, 1}, Hidden::Relu, Output::Sigmoid);
  CHECK_THROWS_AS(load_params(path, other), IoError);
}

TEST_CASE("truncated files are rejected") {
  const std::string path = temp_file("aggan_ckpt_trunc.params");
  {
    std::ofstream f(path);
    f << "aggan-params v1 2,4,1 relu,sigmoid\n";
    f << "W0 4 2 0.5 0.5 0.5\n";  // shorter than the declared 4x2
  }
  const MLPSpec spec = MLPSpec::dense({2, 4, 1}, Hidden::Relu, Output::Sigmoid);
  CHECK_THROWS_AS(load_params(path, spec), IoError);
}

TEST_CASE("foreign files are rejected") {
  const std::string path = temp_file("aggan_ckpt_foreign.params");
  {
    std::ofstream f(path);
    f << "something else entirely\n";
  }
  const MLPSpec spec = MLPSpec::dense({2, 4, 1}, Hidden::Relu, Output::Sigmoid);
  CHECK_THROWS_AS(load_params(path, spec), IoError);
}
