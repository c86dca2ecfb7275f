#ifndef SPARK_TEXT_HPP
#define SPARK_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace spark::text {

// Canonical word tokenizer used wherever a "word count" appears:
// whitespace split, then leading/trailing punctuation trimmed; tokens
// that were punctuation-only are dropped.
std::vector<std::string> words(std::string_view s);

std::size_t word_count(std::string_view s);

std::string lowercase(std::string_view s);

// Lowercased alphanumeric tokens (quote-to-instance matching, Jaccard).
std::vector<std::string> alnum_tokens(std::string_view s);

double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

std::vector<std::string> split_lines(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::string trim(std::string_view s);

bool starts_with_icase(std::string_view s, std::string_view prefix);

} // namespace spark::text

#endif
