#include <gtest/gtest.h>

#include "densem/repro.hpp"

namespace densem {
namespace {

class ReproCase : public ::testing::TestWithParam<std::string> {};

TEST_P(ReproCase, RequiredChecksPass) {
  const ReproResult r = run_repro_case(GetParam());
  EXPECT_EQ(r.id, GetParam());
  for (const auto& c : r.checks) {
    if (c.required) {
      EXPECT_TRUE(c.pass()) << c.name << ": " << c.achieved << " vs " << c.expected;
    }
  }
  EXPECT_TRUE(r.passed());
}

INSTANTIATE_TEST_SUITE_P(All, ReproCase, ::testing::ValuesIn(repro_case_ids()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s)
                             if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
                           return s;
                         });

TEST(Repro, UnknownCase) { EXPECT_THROW(run_repro_case("no-such-case"), LookupError); }

TEST(Repro, SentenceCaseReportsConvention) {
  const ReproResult r = run_repro_case("sentences-7.2");
  EXPECT_GE(r.notes.size(), 2u);
  bool informational = false;
  for (const auto& c : r.checks) informational = informational || !c.required;
  EXPECT_TRUE(informational);
}

}  // namespace
}  // namespace densem
