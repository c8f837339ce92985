#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "helpers.hpp"
#include "nonrep/io.hpp"
#include "nonrep/kspecial.hpp"

using namespace nonrep;

TEST_CASE("check_witness accepts the defining fixtures") {
  Sequence s42 = s_n_c(4, 2);  // 1 2 3 4 1 2
  KBadWitness w{{3, 1, 2, 3, 5, 6}, 2};
  CHECK(check_witness(s42, w, 2));
  CHECK(!check_witness(s42, w, 1));  // step 3 -> 1 needs k >= 2

  // ascending index lists are rejected: the valley must come after position 1
  CHECK(!check_witness(s42, KBadWitness{{1, 2}, 1}, 2));
  CHECK(!check_witness(s42, KBadWitness{{1, 2}, 2}, 2));

  // adjacent distance exactly k passes condition (c)
  Sequence rep = parse_sequence("1 2 1");
  CHECK(check_witness(rep, KBadWitness{{3, 1}, 2}, 2));
  CHECK(!check_witness(rep, KBadWitness{{3, 1}, 2}, 1));

  // the first ascent after the valley must gain strictly less than k
  Sequence aaaa = parse_sequence("1 1 1 1");
  CHECK(!check_witness(aaaa, KBadWitness{{2, 1, 3, 4}, 2}, 2));  // 1 -> 3 is + k
  CHECK(check_witness(aaaa, KBadWitness{{2, 1, 3, 4}, 2}, 3));

  // out-of-range indices throw
  CHECK_THROWS_AS((void)check_witness(s42, KBadWitness{{7, 1}, 2}, 2), std::out_of_range);
  CHECK_THROWS_AS((void)check_witness(s42, KBadWitness{{2, 0}, 2}, 2), std::out_of_range);
}

TEST_CASE("find_k_bad fixtures") {
  CHECK(find_k_bad(s_n_c(4, 2), 2) == KBadWitness{{3, 1, 2, 3, 5, 6}, 2});
  for (int k = 2; k <= 5; k++) {
    std::vector<int> want{k + 1, 1, 2, k + 1, 2 * k + 1, 2 * k + 2};
    CHECK(find_k_bad(s_n_c(2 * k, 2), k) == KBadWitness{want, 2});
  }
  for (int k = 1; k <= 6; k++) CHECK(is_k_special(s_n_c(2 * k, 1), k));
  CHECK(find_k_bad(parse_sequence("1 1"), 1) == KBadWitness{{2, 1}, 2});
  CHECK(!find_k_bad(parse_sequence("1"), 3));
  CHECK_THROWS_AS(find_k_bad(parse_sequence("1 2"), 0), std::invalid_argument);
}

TEST_CASE("find_k_bad against brute-force enumeration") {
  std::mt19937 rng(2024);
  int found = 0;
  for (int trial = 0; trial < 400; trial++) {
    int alphabet = 2 + (int)(rng() % 4);
    int len = 4 + (int)(rng() % 17);  // up to 20
    int k = 1 + (int)(rng() % 4);
    Sequence s = oracle::random_word(rng, len, alphabet);
    auto got = find_k_bad(s, k);
    auto want = oracle::brute_best(s, k, 5);
    if (want) {
      found++;
      REQUIRE(got.has_value());
      CHECK(*got == *want);  // same minimal r, same lexicographically least indices
      CHECK(check_witness(s, *got, k));
    } else if (got) {
      CHECK((int)got->indices.size() > 10);  // beyond the brute horizon
    }
  }
  CHECK(found > 100);  // the sample actually exercises both outcomes
}

TEST_CASE("witness maxima land at the end of some prefix") {
  // has_k_bad_ending_at is the incremental form used by the searches.
  std::mt19937 rng(4711);
  for (int trial = 0; trial < 300; trial++) {
    int alphabet = 2 + (int)(rng() % 3);
    int len = 4 + (int)(rng() % 14);
    int k = 1 + (int)(rng() % 3);
    Sequence s = oracle::random_word(rng, len, alphabet);
    bool any = false;
    for (int pos = 1; pos <= len && !any; pos++) {
      Sequence prefix = s;
      prefix.symbols.resize((size_t)pos);
      any = has_k_bad_ending_at(prefix, k, pos);
    }
    CHECK(any == find_k_bad(s, k).has_value());
  }
}

TEST_CASE("min_distance_criterion") {
  // gap exactly 2k does not count: S_{4,2} has equal pairs at distance 4 only
  CHECK(min_distance_criterion(parse_sequence("1 2 3 4 1 2"), 2) == std::nullopt);
  CHECK(min_distance_criterion(parse_sequence("1 2 3 1"), 2) == std::make_pair(1, 4));
  CHECK(min_distance_criterion(parse_sequence("1 2 1"), 1) == std::nullopt);
  CHECK(min_distance_criterion(parse_sequence("1 2 1"), 2) == std::make_pair(1, 3));

  // equal pair closer than 2k <=> short witness (2r <= 4, valley <= 3):
  // full enumeration over small words
  for (int alphabet = 2; alphabet <= 4; alphabet++)
    for (int len = 2; len <= (alphabet == 2 ? 8 : 6); len++) {
      long long total = 1;
      for (int i = 0; i < len; i++) total *= alphabet;
      for (long long code = 0; code < total; code++) {
        Sequence s;
        s.alphabet_size = alphabet;
        long long c = code;
        for (int i = 0; i < len; i++) {
          s.symbols.push_back((int)(c % alphabet));
          c /= alphabet;
        }
        for (int k = 1; k <= 2; k++) {
          bool pair_close = min_distance_criterion(s, k).has_value();
          CHECK(pair_close == oracle::brute_short_witness(s, k));
        }
      }
    }
}

TEST_CASE("min_distance_criterion on random words") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 500; trial++) {
    int alphabet = 2 + (int)(rng() % 4);
    int len = 2 + (int)(rng() % 20);
    int k = 1 + (int)(rng() % 4);
    Sequence s = oracle::random_word(rng, len, alphabet);
    CHECK(min_distance_criterion(s, k).has_value() == oracle::brute_short_witness(s, k));
  }
}

TEST_CASE("1-special is exactly square-free") {
  std::mt19937 rng(31337);
  for (int trial = 0; trial < 1000; trial++) {
    int alphabet = 2 + (int)(rng() % 4);
    int len = 1 + (int)(rng() % 30);
    Sequence s = oracle::random_word(rng, len, alphabet);
    CHECK(is_k_special(s, 1) == !find_square(s).has_value());
  }
}

TEST_CASE("s_n_c") {
  CHECK(format_sequence(s_n_c(4, 0)) == "1 2 3 4");
  CHECK(format_sequence(s_n_c(4, 2)) == "1 2 3 4 1 2");
  CHECK(s_n_c(3, 2).alphabet_size == 3);
  CHECK_THROWS_AS(s_n_c(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(s_n_c(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(s_n_c(4, -1), std::invalid_argument);
  // S_{2k,2} is k-bad but S_{2k,1} is k-special: the tail length matters
  for (int k = 2; k <= 5; k++) {
    CHECK(!is_k_special(s_n_c(2 * k, 2), k));
    CHECK(is_k_special(s_n_c(2 * k, 1), k));
  }
}

TEST_CASE("construct_3k_plus_1") {
  Sequence s = construct_3k_plus_1(2, 14);
  CHECK(format_sequence(s) == "1 2 3 4 5 6 7 1 2 3 6 7 4 5");
  CHECK(s.alphabet_size == 7);
  for (int k = 1; k <= 4; k++) {
    Sequence w = construct_3k_plus_1(k, 40 * k);
    CHECK(w.length() == 40 * k);
    CHECK(w.alphabet_size == 3 * k + 1);
    CHECK(is_k_special(w, k));
    // too long to stay (k+1)-special on 3k+1 symbols (the maxima are tiny)
    if (k <= 3) CHECK(!is_k_special(w, k + 1));
  }
  // first occurrences of all 10 symbols appear in order for k = 3
  Sequence t = construct_3k_plus_1(3, 60);
  std::vector<int> first_seen;
  for (int x : t.symbols)
    if (std::find(first_seen.begin(), first_seen.end(), x) == first_seen.end())
      first_seen.push_back(x);
  CHECK(first_seen == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("corollary_3k3_sequence") {
  Sequence s = corollary_3k3_sequence(2, 12);
  CHECK(format_sequence(s) == "1 2 3 4 5 6 7 8 9 1 2 3");
  for (int k = 1; k <= 4; k++) {
    Sequence w = corollary_3k3_sequence(k, 40 * k);
    CHECK(w.length() == 40 * k);
    CHECK(w.alphabet_size == 3 * (k + 1));
    CHECK(is_k_special(w, k));
    // matches expanding the square-free base directly
    Sequence direct = block_expand(thue_squarefree(40 * k), k + 1);
    direct.symbols.resize((size_t)40 * k);
    CHECK(w.symbols == direct.symbols);
  }
  // expansion width must exceed k: width-k blocks admit a k-bad witness
  Sequence narrow = block_expand(thue_squarefree(20), 2);
  auto bad = find_k_bad(narrow, 2);
  REQUIRE(bad.has_value());
  CHECK(check_witness(narrow, *bad, 2));
  CHECK(bad->indices == std::vector<int>{7, 5, 6, 7, 9, 10});
}
