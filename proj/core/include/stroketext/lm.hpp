#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stroketext {

// Second-order character model built from trigram counts. Scoring uses
// add-0.1 smoothing over the observed vocabulary at the deepest level whose
// context has been seen: trigram, then bigram, then unigram. Bigram and
// unigram counts are the corresponding marginals of the trigram table.
class LanguageModel {
  public:
    static constexpr char32_t kStart = 0x0002;
    static constexpr double kAdd = 0.1;

    LanguageModel() = default;

    static LanguageModel from_counts(
        const std::vector<std::pair<std::u32string, long long>>& trigrams);

    // Text file, one `trigram<TAB>count` per line, UTF-8.
    static LanguageModel load(const std::string& path);
    void save(const std::string& path) const;

    // -ln p(c | p2 p1); 0 for an empty model.
    double cost(char32_t c, char32_t p2, char32_t p1) const;

    size_t vocab_size() const { return uni_.size(); }
    bool empty() const { return uni_.empty(); }
    std::vector<char32_t> vocabulary() const {
        std::vector<char32_t> v;
        for (const auto& [c, n] : uni_) v.push_back(c);
        return v;
    }

  private:
    std::map<std::u32string, long long> tri_;
    std::map<std::u32string, long long> tri_ctx_;
    std::map<std::u32string, long long> bi_;
    std::map<char32_t, long long> bi_ctx_;
    std::map<char32_t, long long> uni_;
    long long total_ = 0;
};

}  // namespace stroketext
