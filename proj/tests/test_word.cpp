#include <doctest.h>

#include <random>

#include "qmf/word.hpp"

using namespace qmf;

namespace {

Word w(const std::string& text, int rank = 2) { return parse_word(text, rank); }

std::vector<Letter> letters_of(const Word& word) {
  return {word.letters().begin(), word.letters().end()};
}

}  // namespace

TEST_CASE("parse_word basic forms") {
  CHECK(letters_of(w("a b A B")) == std::vector<Letter>{1, 2, -1, -2});
  CHECK(w("a A").is_identity());
  CHECK(letters_of(w("(a b)^2")) == std::vector<Letter>{1, 2, 1, 2});
  CHECK(letters_of(w("abAB")) == std::vector<Letter>{1, 2, -1, -2});
  CHECK(letters_of(w("a^-2")) == std::vector<Letter>{-1, -1});
  CHECK(letters_of(w("x1 X2")) == std::vector<Letter>{1, -2});
  CHECK(letters_of(w("x27 X27", 30)) == std::vector<Letter>{});
  CHECK(letters_of(w("(a (b a)^2)^-1")) == std::vector<Letter>{-1, -2, -1, -2, -1});
}

TEST_CASE("parse_word errors carry byte offsets") {
  CHECK_THROWS_AS(w("a )"), ParseError);
  CHECK_THROWS_AS(w("a ^"), ParseError);
  CHECK_THROWS_AS(w("(a b"), ParseError);
  CHECK_THROWS_AS(w("a c"), ParseError);  // generator 3 at rank 2
  CHECK_THROWS_AS(w("x0"), ParseError);
  try {
    w("ab?");
  } catch (const ParseError& e) {
    CHECK(e.byte_offset == 2);
  }
  CHECK_THROWS_AS(parse_word("a^100000000000", 2), ResourceLimitError);
}

TEST_CASE("print/parse round trip") {
  for (const char* text : {"a b A B", "(a b)^3 B A", "a^5 b^-4 a", ""}) {
    Word word = w(text);
    CHECK(parse_word(print_word(word), 2) == word);
  }
  Word big = parse_word("x30 X31 x30^2", 40);
  CHECK(parse_word(print_word(big), 40) == big);
}

TEST_CASE("multiply reduces freely") {
  CHECK(multiply(w("a b"), w("B a")) == w("a a"));
  CHECK(multiply(Word::identity(2), w("a b A")) == w("a b A"));
  CHECK(multiply(w("a"), w("A")).is_identity());
  CHECK_THROWS_AS(multiply(w("a"), parse_word("a", 3)), ValidationError);
}

TEST_CASE("inverse") {
  CHECK(inverse(w("a b")) == w("B A"));
  CHECK(inverse(Word::identity(2)).is_identity());
  CHECK(inverse(w("a b A")) == w("a B A"));
  CHECK(multiply(w("a b a B"), inverse(w("a b a B"))).is_identity());
}

TEST_CASE("power uses the conjugate factorization") {
  CHECK(power(w("a b"), 2) == w("a b a b"));
  CHECK(power(w("a b A"), 0).is_identity());
  CHECK(power(w("a b A"), 3) == w("a b b b A"));
  CHECK(power(w("a b A"), -2) == w("a B B A"));
  CHECK(power(w("B a b"), 4) == multiply(multiply(w("B a b"), w("B a b")),
                                         multiply(w("B a b"), w("B a b"))));
}

TEST_CASE("commutator") {
  Word a = w("a"), b = w("b");
  CHECK(commutator(a, b) == w("a b A B"));
  CHECK(commutator(a, a).is_identity());
  Word c = commutator(w("a b"), b);
  CHECK(is_in_commutator_subgroup(c));
}

TEST_CASE("abelianize") {
  CHECK(abelianize(w("a b A B")) == IntVector{0, 0});
  CHECK(abelianize(w("a a B")) == IntVector{2, -1});
  CHECK(abelianize(power(w("a b"), 5)) == IntVector{5, 5});
  CHECK(is_in_commutator_subgroup(Word::identity(2)));
  CHECK(!is_in_commutator_subgroup(w("a")));
}

TEST_CASE("prefix_path") {
  LatticePath path = prefix_path(w("a b A B"));
  REQUIRE(path.points.size() == 5);
  CHECK(path.points[0] == IntVector{0, 0});
  CHECK(path.points[1] == IntVector{1, 0});
  CHECK(path.points[2] == IntVector{1, 1});
  CHECK(path.points[3] == IntVector{0, 1});
  CHECK(path.points[4] == IntVector{0, 0});

  CHECK(prefix_path(Word::identity(3)).points ==
        std::vector<IntVector>{IntVector{0, 0, 0}});
  CHECK(prefix_path(w("a a")).points.back() == IntVector{2, 0});
}

TEST_CASE("prefix_path steps move one coordinate by one") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Word word = random_reduced_word(rng, 3, 20);
    LatticePath path = prefix_path(word);
    for (std::size_t s = 0; s + 1 < path.points.size(); ++s) {
      int changed = 0;
      for (std::size_t c = 0; c < 3; ++c) {
        auto d = path.points[s + 1][c] - path.points[s][c];
        CHECK(d >= -1);
        CHECK(d <= 1);
        if (d != 0) ++changed;
      }
      CHECK(changed == 1);
    }
    CHECK(path.points.back() == abelianize(word));
  }
}

TEST_CASE("print/parse round trip on random words") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(0, 40);
  for (int t = 0; t < 2000; ++t) {
    Word word = random_reduced_word(rng, 3, len(rng));
    CHECK(parse_word(print_word(word), 3) == word);
  }
  std::uniform_int_distribution<int> big_len(0, 10);
  for (int t = 0; t < 500; ++t) {
    Word word = random_reduced_word(rng, 30, big_len(rng));
    CHECK(parse_word(print_word(word), 30) == word);
  }
}

TEST_CASE("group laws on random words") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> len(0, 12);
  auto rand_word = [&] { return random_reduced_word(rng, 2, len(rng)); };

  for (int t = 0; t < 10000; ++t) {
    Word u = rand_word(), v = rand_word(), x = rand_word();
    CHECK(multiply(multiply(u, v), x) == multiply(u, multiply(v, x)));
  }

  std::uniform_int_distribution<int> exp(-8, 8);
  for (int t = 0; t < 2000; ++t) {
    Word u = rand_word();
    int j = exp(rng), k = exp(rng);
    CHECK(power(u, j + k) == multiply(power(u, j), power(u, k)));
  }

  for (int t = 0; t < 5000; ++t) {
    Word u = rand_word(), v = rand_word();
    IntVector sum = abelianize(u);
    IntVector bv = abelianize(v);
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += bv[i];
    CHECK(abelianize(multiply(u, v)) == sum);
  }

  for (int t = 0; t < 2000; ++t) {
    Word g1 = rand_word(), g2 = rand_word();
    CHECK(commutator(g1, g2) == inverse(commutator(g2, g1)));
  }

  std::uniform_int_distribution<int> kk(1, 50);
  for (int t = 0; t < 500; ++t) {
    Word g1 = rand_word(), g2 = rand_word();
    std::int64_t k = kk(rng);
    CHECK(commutator(power(g1, k), g2).size() <=
          2 * static_cast<std::size_t>(k) * g1.size() + 2 * g2.size());
  }
}
