#include <gtest/gtest.h>

#include <filesystem>

#include "gltkit/batteries.hpp"
#include "gltkit/io.hpp"

using namespace gltkit;
using nlohmann::json;

TEST(TrigJson, RoundTrip) {
  SplitMix64 rng(1);
  const auto f = random_trig(rng, 2, 2, 3, 1, false);
  const auto back = trig_from_json(to_json(f));
  EXPECT_EQ(back.levels(), 2u);
  EXPECT_EQ(back.coeffs(), f.coeffs());
}

TEST(TrigJson, ScalarShorthandAndErrors) {
  const auto f = trig_from_json(json::parse(R"({"levels":1,"s":1,"t":1,
      "coeffs":[{"k":[-1],"re":-1},{"k":[0],"re":2},{"k":[1],"re":-1}]})"));
  EXPECT_EQ(f.coeffs(), TrigPoly::laplacian().coeffs());
  EXPECT_THROW(trig_from_json(json::parse(R"({"levels":1,"s":1,"t":1,"coeffs":[],"x":1})")), FormatError);
  EXPECT_THROW(trig_from_json(json::parse(R"({"levels":1,"s":1,"t":1,"coeffs":[{"k":[0,1],"re":1}]})")), DomainError);
  EXPECT_THROW(trig_from_json(json::parse(R"({"levels":1,"s":2,"t":1,"coeffs":[{"k":[0],"re":[[1,2]]}]})")), DomainError);
  EXPECT_THROW(trig_from_json(json::parse(R"([1,2])")), FormatError);
}

TEST(SymbolJson, RoundTrip) {
  GltSymbol k(1, 1, 1);
  k.add_term(CoeffFn::parse("x1*(1-x1)", 1), TrigPoly::laplacian());
  k.add_term(CoeffFn::parse("2", 1), TrigPoly::monomial({3}));
  const auto back = symbol_from_json(to_json(k));
  ASSERT_EQ(back.terms().size(), 2u);
  const double x[] = {0.3}, t[] = {0.9};
  EXPECT_EQ(back.eval(x, t), k.eval(x, t));
  EXPECT_THROW(symbol_from_json(json::parse(R"({"levels":1,"s":1,"t":1,"terms":[{"a":"x9","f":{"levels":1,"s":1,"t":1,"coeffs":[]}}]})")),
               DomainError);
}

TEST(MatrixText, RoundTripIsExact) {
  SplitMix64 rng(2);
  const auto a = random_matrix(rng, 3, 4);
  const auto text = matrix_to_text(a);
  EXPECT_EQ(text.substr(0, 4), "3 4\n");
  EXPECT_EQ(matrix_from_text(text), a);
  EXPECT_THROW(matrix_from_text("2 2\n1,0 2,0\n"), DomainError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  const double v = 1.0 / 3;
  EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(AtomicWrite, ReplacesAndLeavesNoTemporary) {
  const auto dir = std::filesystem::temp_directory_path() / "gltkit_io_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "a.txt";
  write_file_atomic(path, "one");
  write_file_atomic(path, "two");
  EXPECT_EQ(read_file(path), "two");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1u);
  EXPECT_THROW(read_file(dir / "missing"), IoError);
  EXPECT_THROW(write_file_atomic(dir / "no" / "such" / "dir.txt", "x"), IoError);
  std::filesystem::remove_all(dir);
}
