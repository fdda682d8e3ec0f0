#include <doctest.h>

#include <algorithm>

#include "stylomech/eval.hpp"
#include "support.hpp"

using namespace stylomech;

namespace {

PairDataset labeled(std::size_t pos, std::size_t neg) {
  PairDataset ds;
  ds.feature_names = {"x"};
  for (std::size_t i = 0; i < pos + neg; ++i) {
    ds.rows.push_back({ds.feature_names, {static_cast<double>(i)}, i < pos ? 1 : 0});
  }
  return ds;
}

std::size_t positives(const PairDataset& ds) {
  return static_cast<std::size_t>(
      std::count_if(ds.rows.begin(), ds.rows.end(), [](const SimilarityRecord& r) { return r.label == 1; }));
}

ConfusionMatrix matrix(std::uint64_t tn, std::uint64_t fp, std::uint64_t fn, std::uint64_t tp) {
  ConfusionMatrix cm;
  cm.counts = {{{tn, fp}, {fn, tp}}};
  return cm;
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("split sizes") {
    const auto [train, test] = split(labeled(5, 5), {0.8, 1, false});
    CHECK(train.size() == 8);
    CHECK(test.size() == 2);
    const auto [strain, stest] = split(labeled(5, 5), {0.8, 1, true});
    CHECK(positives(strain) == 4);
    CHECK(strain.size() == 8);
    CHECK(positives(stest) == 1);
  }

  TEST_CASE("split is a deterministic partition") {
    const auto ds = labeled(13, 21);
    const auto a = split(ds, {0.7, 9, true});
    CHECK(a == split(ds, {0.7, 9, true}));
    std::vector<double> seen;
    for (const auto* part : {&a.first, &a.second}) {
      for (const auto& r : part->rows) seen.push_back(r.values[0]);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(seen.size() == ds.size());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  }

  TEST_CASE("split errors") {
    CHECK_ERRC(split(labeled(5, 5), {1.0, 1, true}), Errc::InvalidParams);
    CHECK_ERRC(split(labeled(5, 5), {0.0, 1, true}), Errc::InvalidParams);
    CHECK_ERRC(split(labeled(5, 0), {0.8, 1, true}), Errc::TooFewRows);
    CHECK_ERRC(split(labeled(1, 0), {0.8, 1, false}), Errc::TooFewRows);
  }

  TEST_CASE("confusion examples") {
    const int l01[] = {0, 1};
    const int w10[] = {1, 0};
    CHECK(confusion(l01, l01) == matrix(1, 0, 0, 1));
    CHECK(confusion(w10, l01) == matrix(0, 1, 1, 0));
    const int preds[] = {1, 1, 0};
    const int labels[] = {1, 0, 0};
    const auto cm = confusion(preds, labels);
    CHECK(cm.counts[1][1] == 1);
    CHECK(cm.counts[0][1] == 1);
    CHECK(cm.counts[0][0] == 1);
    CHECK(cm.total() == 3);
    CHECK_ERRC(confusion(preds, l01), Errc::LengthMismatch);
    CHECK_ERRC(confusion(std::span<const int>{}, std::span<const int>{}), Errc::LengthMismatch);
    const int bad[] = {2, 0};
    CHECK_ERRC(confusion(bad, l01), Errc::InvalidParams);
  }

  TEST_CASE("report metrics") {
    const auto r = report(matrix(63, 25, 26, 55));
    CHECK(r.per_class[0].precision == doctest::Approx(63.0 / 89.0));
    CHECK(r.per_class[0].recall == doctest::Approx(63.0 / 88.0));
    CHECK(r.per_class[1].f1 == doctest::Approx(110.0 / 161.0));
    CHECK(r.accuracy == doctest::Approx(118.0 / 169.0));
    CHECK(r.total_support == 169);
    CHECK(r.weighted_avg.recall == r.accuracy);

    const auto perfect = report(matrix(4, 0, 0, 6));
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.macro_avg.f1 == 1.0);
    CHECK_ERRC(report(ConfusionMatrix{}), Errc::EmptyMatrix);

    // A class that is never predicted has precision 0, not NaN.
    const auto none = report(matrix(5, 0, 5, 0));
    CHECK(none.per_class[1].precision == 0.0);
    CHECK(none.per_class[1].f1 == 0.0);
  }

  TEST_CASE("format_report cells") {
    const auto text = format_report(report(matrix(54, 2, 9, 16)));
    CHECK(text.find("0.86      0.96      0.91        56") != std::string::npos);
    CHECK(text.find("0.89      0.64      0.74        25") != std::string::npos);
    CHECK(text.find("accuracy") != std::string::npos);
    const auto perfect = format_report(report(matrix(3, 0, 0, 3)));
    CHECK(perfect.find("0.") == std::string::npos);
    CHECK(perfect.find("1.00") != std::string::npos);
  }
}
