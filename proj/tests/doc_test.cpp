#include <gtest/gtest.h>

#include "cminer/doc/candidates.hpp"

namespace doc = cminer::doc;
namespace oas = cminer::oas;

namespace {

oas::EndpointSpec specWith(const nlohmann::json& properties) {
  nlohmann::json docJson = {{"schema", {{"properties", properties}}}};
  return oas::loadSpec(docJson.dump());
}

size_t indexOf(const doc::CooccurrenceMatrix& m, const std::string& path) {
  for (size_t i = 0; i < m.params().size(); ++i)
    if (m.params()[i] == path) return i;
  throw std::runtime_error("no such param " + path);
}

}  // namespace

TEST(Cooccurrence, DescriptionMentionIncrementsCell) {
  const auto spec = specWith({
      {"bankAccount",
       {{"type", "object"},
        {"description", "The details of the bank account. Either bankAccount or card is required."}}},
      {"card", {{"type", "object"}, {"description", "The card to charge."}}},
  });
  const doc::CooccurrenceMatrix m = doc::buildCooccurrence(spec);
  EXPECT_EQ(m.at(indexOf(m, "bankAccount"), indexOf(m, "card")), 1);
  EXPECT_EQ(m.at(indexOf(m, "card"), indexOf(m, "bankAccount")), 0);
}

TEST(Cooccurrence, NoMentionsZeroRow) {
  const auto spec = specWith({
      {"alpha", {{"type", "string"}, {"description", "Nothing to see."}}},
      {"beta", {{"type", "string"}}},
  });
  const doc::CooccurrenceMatrix m = doc::buildCooccurrence(spec);
  EXPECT_EQ(m.at(indexOf(m, "alpha"), indexOf(m, "beta")), 0);
}

TEST(Cooccurrence, DoubleMentionCountsTwice) {
  const auto spec = specWith({
      {"alpha",
       {{"type", "string"},
        {"description", "Used with card. A valid card is mandatory."}}},
      {"card", {{"type", "object"}}},
  });
  const doc::CooccurrenceMatrix m = doc::buildCooccurrence(spec);
  EXPECT_EQ(m.at(indexOf(m, "alpha"), indexOf(m, "card")), 2);
}

TEST(Cooccurrence, WordBoundariesAndCase) {
  EXPECT_EQ(doc::countMentions("the card is here", "card"), 1);
  EXPECT_EQ(doc::countMentions("discarded cards", "card"), 0);
  EXPECT_EQ(doc::countMentions("Card holder", "card"), 0);  // case-sensitive
  EXPECT_EQ(doc::countMentions("card, card; card", "card"), 3);
  EXPECT_EQ(doc::countMentions("returnUrl must be set", "returnUrl"), 1);
}

TEST(MarkValues, EnumLiteralRecordedAgainstDescriber) {
  const auto spec = specWith({
      {"recurring",
       {{"type", "object"},
        {"properties",
         {{"contract",
           {{"type", "string"}, {"enum", {"ONECLICK", "RECURRING"}}}}}}}},
      {"card",
       {{"type", "object"},
        {"properties",
         {{"cvc",
           {{"type", "string"},
            {"description", "Required when the contract is ONECLICK."}}}}}}},
  });
  const doc::MarkedValues marked = doc::markValues(spec);
  ASSERT_TRUE(marked.contains("card.cvc"));
  const auto& entries = marked.at("card.cvc");
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries.begin()->first, "recurring.contract");
  EXPECT_EQ(std::get<std::string>(entries.begin()->second), "ONECLICK");
}

TEST(MarkValues, FreeTextValuesAreNotMarked) {
  // "US" appears only as free text; country declares no enum, so nothing can
  // be marked (the documented A3 limitation).
  const auto spec = specWith({
      {"stateOrProvince",
       {{"type", "string"}, {"description", "Required for the US and Canada."}}},
      {"country", {{"type", "string"}}},
  });
  EXPECT_TRUE(doc::markValues(spec).empty());
}

TEST(MarkValues, EmptyDescription) {
  const auto spec = specWith({{"a", {{"type", "string"}}}});
  EXPECT_TRUE(doc::markValues(spec).empty());
}

TEST(Candidates, SingleNonzeroCellBecomesPair) {
  const auto spec = specWith({
      {"bankAccount",
       {{"type", "object"}, {"description", "Either bankAccount or card."}}},
      {"card", {{"type", "object"}}},
  });
  const auto cands = doc::candidates(spec);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].paths, (std::vector<std::string>{"bankAccount", "card"}));
}

TEST(Candidates, FrequentTermDropped) {
  // "reference" is mentioned by many unrelated descriptions; with the factor-2
  // filter over nonzero means it drops out of every candidate pair.
  nlohmann::json properties = {
      {"reference", {{"type", "string"}}},
      {"alpha", {{"type", "string"}, {"description", "See beta."}}},
      {"beta", {{"type", "string"}, {"description", "See alpha."}}},
  };
  for (int i = 0; i < 10; ++i) {
    properties["p" + std::to_string(i)] = {
        {"type", "string"},
        {"description", "Free-text reference for bookkeeping."}};
  }
  const auto spec = specWith(properties);
  const auto cands = doc::candidates(spec);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].paths, (std::vector<std::string>{"alpha", "beta"}));
}

TEST(Candidates, AllZeroMatrixGivesNoCandidates) {
  const auto spec = specWith({
      {"a", {{"type", "string"}, {"description", "standalone"}}},
      {"b", {{"type", "string"}}},
  });
  EXPECT_TRUE(doc::candidates(spec).empty());
}

TEST(Candidates, MarkedValuesAttachedToPair) {
  const auto spec = specWith({
      {"paymentMethod",
       {{"type", "object"},
        {"properties",
         {{"type",
           {{"type", "string"},
            {"enum", {"iDEAL", "scheme"}},
            {"description",
             "The payment method type. With iDEAL a returnUrl is required."}}}}}}},
      {"returnUrl", {{"type", "string"}}},
  });
  const auto cands = doc::candidates(spec);
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].paths,
            (std::vector<std::string>{"paymentMethod.type", "returnUrl"}));
  ASSERT_TRUE(cands[0].markedValues.contains("paymentMethod.type"));
  EXPECT_EQ(std::get<std::string>(cands[0].markedValues.at("paymentMethod.type")[0]),
            "iDEAL");
}

TEST(Candidates, RaisingFactorNeverShrinksCandidates) {
  nlohmann::json properties = {
      {"hub", {{"type", "string"}}},
      {"a", {{"type", "string"}, {"description", "pairs with hub and b"}}},
      {"b", {{"type", "string"}, {"description", "pairs with hub and a"}}},
      {"c", {{"type", "string"}, {"description", "mentions hub"}}},
  };
  const auto spec = specWith(properties);
  size_t prev = 0;
  for (double factor : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const size_t count = doc::candidates(spec, factor).size();
    EXPECT_GE(count, prev) << "factor " << factor;
    prev = count;
  }
}

TEST(Candidates, JsonRoundTrip) {
  const auto spec = specWith({
      {"paymentMethod",
       {{"type", "object"},
        {"properties",
         {{"type",
           {{"type", "string"},
            {"enum", {"iDEAL"}},
            {"description", "With iDEAL a returnUrl is required."}}}}}}},
      {"returnUrl", {{"type", "string"}}},
  });
  const auto cands = doc::candidates(spec);
  const auto roundTripped = doc::candidatesFromJson(doc::candidatesToJson(cands));
  ASSERT_EQ(roundTripped.size(), cands.size());
  EXPECT_EQ(roundTripped[0].paths, cands[0].paths);
  EXPECT_EQ(roundTripped[0].markedValues, cands[0].markedValues);
}
