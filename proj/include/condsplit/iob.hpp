#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "condsplit/annotation.hpp"
#include "condsplit/doccano.hpp"
#include "condsplit/tokenizer.hpp"

namespace condsplit {

enum class IobPrefix { Outside, Begin, Inside };

struct IobTag {
  IobPrefix prefix = IobPrefix::Outside;
  Label label = Label::Condition;  // ignored for Outside

  friend bool operator==(const IobTag& a, const IobTag& b) {
    return a.prefix == b.prefix && (a.prefix == IobPrefix::Outside || a.label == b.label);
  }
};

// "O", "B-Condition", "I-Unconditional-Action", ...
std::string to_string(const IobTag& tag);
std::optional<IobTag> parse_iob_tag(std::string_view text);

struct IobSequence {
  std::vector<Token> tokens;
  std::vector<IobTag> tags;
};

// Empty when tags and tokens line up and every I-X follows B-X or I-X.
std::vector<std::string> check_iob(const IobSequence& sequence);

// Tags the tokens of `sentence.text`. A token inside a span labeled X gets
// B-X (first) or I-X; punctuation at a span's trailing edge gets O.
// Throws ValidationError when a token straddles a span boundary.
IobSequence to_iob(const AnnotatedSentence& sentence);

// Inverse of to_iob: each B-X I-X* run becomes a span from its first token
// start to its last token end. With no spans and no `sentence_label` given,
// the sentence is labeled No Condition. Throws ValidationError on illegal
// tag sequences.
AnnotatedSentence from_iob(const IobSequence& sequence, std::string_view text, std::int64_t id = 0,
                           std::optional<Label> sentence_label = std::nullopt);

// IOB file layout, one block per sentence:
//   # id = 908
//   # text = Include the date if the opt-out period expires.
//   Include<TAB>B-Action
//   ...
//   .<TAB>O
//   <blank line>
// A "# label = <label>" line carries a sentence-level label. The comment
// lines are optional on input; without "# text" the tokens are joined by
// single spaces.
struct IobWriteOptions {
  bool metadata = true;
};

void write_iob(std::ostream& out, const AnnotatedSentence& sentence,
               const IobWriteOptions& options = {});

class IobReader {
 public:
  explicit IobReader(std::istream& in, ParseMode mode = ParseMode::Strict)
      : in_(in), mode_(mode) {}

  // Next sentence as an annotation, or nullopt at end of stream.
  std::optional<AnnotatedSentence> next();

  const std::vector<ReadIssue>& issues() const { return issues_; }

 private:
  std::optional<AnnotatedSentence> parse_block();

  std::istream& in_;
  ParseMode mode_;
  std::size_t line_ = 0;
  std::int64_t next_id_ = 1;
  std::vector<ReadIssue> issues_;
};

}  // namespace condsplit
