#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"
#include "wncs/errors.hpp"
#include "wncs/link_adaptation.hpp"

using namespace wncs;

namespace {

// Single-entry helper with an explicit BLER curve on a dB grid.
McsEntry make_entry(int id, int mod, double rate,
                    std::initializer_list<double> snr,
                    std::initializer_list<double> bler) {
  McsEntry e;
  e.id = id;
  e.modulation_order = mod;
  e.code_rate = rate;
  for (double s : snr) e.snr_db.push_back(s);
  for (double b : bler) e.log10_bler.push_back(std::log10(b));
  return e;
}

Catalogue parse(const std::string& text) {
  std::istringstream in(text);
  return parse_bler_csv(in, "mem");
}

const std::string kHeader = "mcs_id,modulation_order,code_rate,snr_db,bler\n";

}  // namespace

TEST_SUITE("link_adaptation") {
  TEST_CASE("resource blocks needed per transport block") {
    McsEntry qpsk13 = make_entry(0, 4, 1.0 / 3.0, {0.0}, {0.5});
    // 84 symbols * 2 bits * 1/3 = 56 bits per block -> ceil(600/56) = 11.
    CHECK(rb_needed(600, qpsk13) == 11);
    McsEntry qam64_34 = make_entry(8, 64, 0.75, {0.0}, {0.5});
    // 84 * 6 * 3/4 = 378 -> ceil(600/378) = 2.
    CHECK(rb_needed(600, qam64_34) == 2);
    // Exactly divisible payloads must not slip an extra block even though
    // 1/3 is inexact in binary: 56 * 3 = 168.
    CHECK(rb_needed(168, qpsk13) == 3);
    CHECK(rb_needed(56, qpsk13) == 1);
    CHECK(rb_needed(57, qpsk13) == 2);
    CHECK(rb_needed(1, qam64_34) == 1);
    CHECK_THROWS_AS(rb_needed(0, qpsk13), DomainError);
    CHECK_THROWS_AS(rb_needed(-5, qpsk13), DomainError);
  }

  TEST_CASE("spectral efficiency") {
    CHECK(make_entry(0, 4, 0.5, {0.0}, {0.5}).spectral_efficiency() == 1.0);
    CHECK(make_entry(0, 64, 0.75, {0.0}, {0.5}).spectral_efficiency() == 4.5);
  }

  TEST_CASE("bler interpolation is linear in db and log-bler") {
    McsEntry e = make_entry(0, 4, 0.5, {0.0, 10.0}, {1e-1, 1e-3});
    // Midpoint of the dB span is the geometric mean of the endpoints.
    const double mid = bler_at(e, std::pow(10.0, 0.5));  // 5 dB
    CHECK(mid == doctest::Approx(1e-2).epsilon(1e-12));
    // Clamped outside the sampled span.
    CHECK(bler_at(e, std::pow(10.0, -2.0)) ==
          doctest::Approx(1e-1).epsilon(1e-12));
    CHECK(bler_at(e, std::pow(10.0, 4.0)) ==
          doctest::Approx(1e-3).epsilon(1e-12));
    // Zero SNR maps to -inf dB, i.e. the left endpoint.
    CHECK(bler_at(e, 0.0) == doctest::Approx(1e-1).epsilon(1e-12));
    CHECK_THROWS_AS(bler_at(e, -1.0), DomainError);
    McsEntry empty;
    empty.snr_db.clear();
    CHECK_THROWS_AS(bler_at(empty, 1.0), ConfigError);
  }

  TEST_CASE("bler output is clamped to the representable band") {
    McsEntry e = make_entry(0, 4, 0.5, {0.0, 10.0}, {1.0, 1e-15});
    for (double s_db : {-40.0, 0.0, 5.0, 10.0, 60.0}) {
      const double v = bler_at(e, std::pow(10.0, s_db / 10.0));
      CHECK(v >= 1e-12);
      CHECK(v <= 1.0);
    }
  }

  TEST_CASE("selection takes the fastest entry strictly under threshold") {
    Catalogue cat = default_catalogue();
    REQUIRE(cat.size() == 9);
    // Catalogue is sorted by spectral efficiency ascending.
    for (std::size_t i = 1; i < cat.size(); ++i)
      CHECK(cat[i].spectral_efficiency() >=
            cat[i - 1].spectral_efficiency());

    // Very strong channel: the fastest entry qualifies.
    const int top = select_mcs_index(cat, 1e8, 1e-3);
    CHECK(top == static_cast<int>(cat.size()) - 1);
    // Hopeless channel: nothing qualifies.
    CHECK(select_mcs_index(cat, 1e-6, 1e-3) == -1);
    CHECK(select_mcs(cat, 1e-6, 1e-3) == nullptr);
    // Threshold exactly on a sampled BLER: strict comparison rejects it.
    McsEntry flat = make_entry(0, 4, 0.5, {0.0, 10.0}, {1e-3, 1e-3});
    Catalogue one{flat};
    CHECK(select_mcs_index(one, 10.0, 1e-3) == -1);
    CHECK(select_mcs_index(one, 10.0, 1.0000001e-3) == 0);

    // Intermediate SNR picks an intermediate entry, monotone in threshold.
    const int mid_tight = select_mcs_index(cat, 50.0, 1e-4);
    const int mid_loose = select_mcs_index(cat, 50.0, 1e-1);
    CHECK(mid_tight >= 0);
    CHECK(mid_loose >= mid_tight);
  }

  TEST_CASE("default catalogue ties sort higher modulation first") {
    Catalogue cat = default_catalogue();
    // QPSK 1/2 and 16QAM 1/4 don't coexist here, but QPSK 3/4 (eff 1.5)
    // vs 16QAM 1/3 (eff 4/3) do not tie either; assert full strict order
    // except documented tie handling.
    for (std::size_t i = 1; i < cat.size(); ++i) {
      const double ea = cat[i - 1].spectral_efficiency();
      const double eb = cat[i].spectral_efficiency();
      if (ea == eb) CHECK(cat[i - 1].modulation_order > cat[i].modulation_order);
    }
    // Synthetic tie: 16QAM 1/2 (eff 2) vs QPSK 1/1 (eff 2).
    Catalogue tie = parse(kHeader +
                          "0,16,0.5,0,0.5\n"
                          "1,4,1.0,0,0.5\n");
    REQUIRE(tie.size() == 2);
    CHECK(tie[0].modulation_order == 16);
    CHECK(tie[1].modulation_order == 4);
  }

  TEST_CASE("csv loader accepts the shipped table and default shape") {
    Catalogue cat = load_bler_table("data/default_bler.csv");
    Catalogue ref = default_catalogue();
    REQUIRE(cat.size() == ref.size());
    for (std::size_t i = 0; i < cat.size(); ++i) {
      CHECK(cat[i].id == ref[i].id);
      CHECK(cat[i].modulation_order == ref[i].modulation_order);
      CHECK(cat[i].code_rate ==
            doctest::Approx(ref[i].code_rate).epsilon(1e-15));
      REQUIRE(cat[i].snr_db.size() == ref[i].snr_db.size());
      for (std::size_t k = 0; k < cat[i].snr_db.size(); ++k) {
        CHECK(cat[i].snr_db[k] ==
              doctest::Approx(ref[i].snr_db[k]).epsilon(1e-12));
        CHECK(cat[i].log10_bler[k] ==
              doctest::Approx(ref[i].log10_bler[k])
                  .epsilon(1e-9).scale(1.0));
      }
    }
  }

  TEST_CASE("csv loader rejects malformed input with the row number") {
    CHECK_THROWS_WITH_AS(parse(""), "mem: empty file", ConfigError);
    CHECK_THROWS_WITH_AS(
        parse("id,mod\n"),
        "mem: header must be mcs_id,modulation_order,code_rate,snr_db,bler",
        ConfigError);
    CHECK_THROWS_AS(parse(kHeader), ConfigError);  // no data rows
    CHECK_THROWS_WITH_AS(parse(kHeader + "0,4,0.5,1.0\n"),
                         "mem: row 2: expected 5 comma-separated fields",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse(kHeader + "0,4,0.5,1.0,0.1,9\n"),
                         "mem: row 2: expected 5 comma-separated fields",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse(kHeader + "0,4,0.5,1.0,1.5\n"),
                         "mem: row 2: bler must be in [0, 1]",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse(kHeader + "0,8,0.5,1.0,0.1\n"),
                         "mem: row 2: modulation_order must be 4, 16, or 64",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse(kHeader + "0,4,1.5,1.0,0.1\n"),
                         "mem: row 2: code_rate must be in (0, 1]",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse(kHeader + "0,4,0.5,x,0.1\n"),
                         "mem: row 2: unparseable numeric field",
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse(kHeader +
                               "0,4,0.5,1.0,0.1\n"
                               "0,4,0.5,1.0,0.05\n"),
                         "mem: row 3: duplicate (mcs_id, snr_db) sample",
                         ConfigError);
    CHECK_THROWS_WITH_AS(
        parse(kHeader +
              "0,4,0.5,1.0,0.1\n"
              "0,16,0.5,2.0,0.05\n"),
        "mem: row 3: inconsistent modulation/code_rate for mcs_id",
        ConfigError);
    CHECK_THROWS_WITH_AS(parse(kHeader +
                               "0,4,0.5,1.0,0.1\n"
                               "0,4,0.5,2.0,0.2\n"),
                         "mem: mcs_id 0: BLER increases with SNR",
                         ConfigError);
    CHECK_THROWS_AS(load_bler_table("no/such/file.csv"), ConfigError);
  }

  TEST_CASE("csv loader tolerates blank lines, crlf, and unsorted rows") {
    Catalogue cat = parse(kHeader +
                          "\r\n"
                          "0,4,0.5,5.0,0.01\r\n"
                          "\n"
                          "0,4,0.5,1.0,0.3\n");
    REQUIRE(cat.size() == 1);
    REQUIRE(cat[0].snr_db.size() == 2);
    CHECK(cat[0].snr_db[0] == 1.0);
    CHECK(cat[0].snr_db[1] == 5.0);
    // Single-sample entries are legal (flat curve).
    Catalogue single = parse(kHeader + "3,16,0.75,7.0,0.2\n");
    CHECK(single.size() == 1);
    CHECK(bler_at(single[0], 1e6) == doctest::Approx(0.2).epsilon(1e-12));
  }

  TEST_CASE("zero bler samples are floored to keep log nodes finite") {
    Catalogue cat = parse(kHeader +
                          "0,4,0.5,0.0,0.5\n"
                          "0,4,0.5,10.0,0\n");
    REQUIRE(cat.size() == 1);
    CHECK(cat[0].log10_bler.back() == doctest::Approx(-15.0).epsilon(1e-12));
  }

  TEST_CASE("expected bler falls with mean snr and matches the cache") {
    Catalogue cat = default_catalogue();
    QuadratureSpec spec;
    const McsEntry& e = cat[0];
    double prev = 1.1;
    for (double gb_db : {-5.0, 0.0, 5.0, 10.0, 20.0, 30.0}) {
      const double gb = std::pow(10.0, gb_db / 10.0);
      const double v = expected_bler(e, gb, spec);
      CHECK(v <= prev);
      CHECK(v > 0.0);
      CHECK(v <= 1.0);
      prev = v;
    }

    ExpectedBlerCache cache(cat, spec);
    REQUIRE_FALSE(cache.empty());
    for (int idx : {0, 4, 8}) {
      for (double gb_db : {-3.0, 2.0, 11.0, 26.0, 41.0}) {
        const double gb = std::pow(10.0, gb_db / 10.0);
        const double direct =
            std::max(expected_bler(cat[static_cast<std::size_t>(idx)], gb,
                                   spec),
                     1e-12);
        const double cached = cache.at(idx, gb);
        CHECK(std::fabs(std::log10(cached) - std::log10(direct)) < 0.02);
      }
    }
    // Off-grid extremes clamp instead of extrapolating.
    CHECK(cache.at(0, 1e-9) == cache.at(0, 1e-6));
    CHECK(cache.at(8, 1e12) == cache.at(8, 1e9));
  }

  TEST_CASE("expected bler of a step-like curve matches the closed form") {
    // A curve pinned at 1 below the knee and 1e-15 above approximates the
    // indicator of an outage; its fading average is ~1 - exp(-knee/gb).
    McsEntry e = make_entry(0, 4, 0.5, {9.999999, 10.0}, {1.0, 1e-15});
    const double knee = std::pow(10.0, 1.0);
    for (double gb : {5.0, 10.0, 40.0}) {
      const double v = expected_bler(e, gb, QuadratureSpec{});
      const double closed = 1.0 - std::exp(-knee / gb);
      CHECK(v == doctest::Approx(closed).epsilon(5e-3));
    }
  }
}
