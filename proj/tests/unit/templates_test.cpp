#include <gtest/gtest.h>

#include <filesystem>

#include "ja/error.hpp"
#include "ja/prompt/templates.hpp"

namespace ja {
namespace {

TEST(TemplateStoreTest, DefaultSetHasAllTemplates) {
  const auto store = TemplateStore::load_default();
  EXPECT_EQ(store.version(), "v1");
  for (const char* name : {kStage1Template, kStage1EngagementTemplate,
                           kStage2PlainTemplate, kStage2ReasoningTemplate}) {
    EXPECT_TRUE(store.contains(name)) << name;
  }
}

TEST(TemplateStoreTest, MissingDirectoryIsConfigurationError) {
  try {
    TemplateStore::load("/nonexistent/prompts/v9");
    FAIL() << "expected configuration error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfiguration);
  }
}

TEST(TemplateStoreTest, MissingTemplateIsConfigurationError) {
  const auto store = TemplateStore::from_map({{"a", "x"}});
  try {
    store.get(kStage1Template);
    FAIL() << "expected configuration error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfiguration);
    EXPECT_NE(std::string(e.what()).find(kStage1Template), std::string::npos);
  }
}

TEST(FillTemplateTest, SubstitutesInline) {
  EXPECT_EQ(fill_template("a {{x}} b {{y}}\n", {{"x", "1"}, {"y", "2"}}),
            "a 1 b 2\n");
}

TEST(FillTemplateTest, DropsWholeLinePlaceholderWhenEmpty) {
  EXPECT_EQ(fill_template("a\n{{x}}\nb\n", {{"x", ""}}), "a\nb\n");
  EXPECT_EQ(fill_template("a\n{{x}}\nb\n", {{"x", "mid"}}), "a\nmid\nb\n");
}

TEST(FillTemplateTest, InlineEmptyKeepsLine) {
  EXPECT_EQ(fill_template("a{{x}}b\n", {{"x", ""}}), "ab\n");
}

TEST(FillTemplateTest, UnknownPlaceholderThrows) {
  EXPECT_THROW(fill_template("{{nope}}", {}), Error);
  EXPECT_THROW(fill_template("x {{nope}} y", {}), Error);
}

TEST(FillTemplateTest, KeepsTextWithoutTrailingNewline) {
  EXPECT_EQ(fill_template("no newline {{x}}", {{"x", "here"}}),
            "no newline here");
}

}  // namespace
}  // namespace ja
