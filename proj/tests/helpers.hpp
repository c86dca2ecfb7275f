#ifndef SPARK_TEST_HELPERS_HPP
#define SPARK_TEST_HELPERS_HPP

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spark/corpus.hpp"

namespace testutil {

inline std::filesystem::path temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("spark_test_" + tag);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::string write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  return path.string();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Random store for filter property tests; word counts straddle the
// 50/10/15 thresholds on purpose.
inline spark::corpus::CorpusStore random_store(std::mt19937_64& rng) {
  using namespace spark::corpus;
  CorpusStore store;
  std::uniform_int_distribution<int> n_posts(1, 8);
  std::uniform_int_distribution<int> n_comments(0, 14);
  std::uniform_int_distribution<int> words_post(40, 70);
  std::uniform_int_distribution<int> words_comment(8, 25);
  std::uniform_int_distribution<int> coin(0, 9);

  auto body_of = [](int words) {
    std::string b;
    for (int w = 0; w < words; ++w) b += "word ";
    return b;
  };

  const int np = n_posts(rng);
  int cid = 0;
  for (int p = 0; p < np; ++p) {
    Post post;
    post.id = "p" + std::to_string(p);
    post.author_id = "a" + std::to_string(p);
    post.title = "t";
    post.body = body_of(words_post(rng));
    post.is_deleted = coin(rng) == 0;
    post.is_moderator = coin(rng) == 1;
    store.posts[post.id] = post;

    const int nc = n_comments(rng);
    for (int c = 0; c < nc; ++c) {
      Comment cm;
      cm.id = "c" + std::to_string(cid++);
      cm.link_id = post.id;
      cm.parent_id = coin(rng) < 8 ? post.id : cm.id; // some nested
      cm.author_id = "u" + std::to_string(cid);
      cm.body = body_of(words_comment(rng));
      if (coin(rng) < 6) cm.body += " NTA";
      if (coin(rng) < 4) cm.body = "> quoted line\n" + cm.body;
      cm.is_deleted = coin(rng) == 0;
      cm.is_moderator = coin(rng) == 1;
      store.comments[cm.id] = cm;
    }
  }
  return store;
}

} // namespace testutil

#endif
