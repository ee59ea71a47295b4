#include "stroketext/lm.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "stroketext/utf8.hpp"

namespace stroketext {

LanguageModel LanguageModel::from_counts(
    const std::vector<std::pair<std::u32string, long long>>& trigrams) {
    LanguageModel lm;
    for (const auto& [gram, count] : trigrams) {
        if (gram.size() != 3) throw std::invalid_argument("LanguageModel: trigram length");
        if (count <= 0) throw std::invalid_argument("LanguageModel: nonpositive count");
        lm.tri_[gram] += count;
        lm.tri_ctx_[gram.substr(0, 2)] += count;
        lm.bi_[gram.substr(1, 2)] += count;
        lm.bi_ctx_[gram[1]] += count;
        lm.uni_[gram[2]] += count;
        lm.total_ += count;
        // Vocabulary covers every position, not just the predicted one.
        lm.uni_.insert({gram[0], 0});
        lm.uni_.insert({gram[1], 0});
    }
    return lm;
}

double LanguageModel::cost(char32_t c, char32_t p2, char32_t p1) const {
    if (uni_.empty()) return 0.0;
    double v = double(uni_.size());
    auto tc = tri_ctx_.find(std::u32string{p2, p1});
    if (tc != tri_ctx_.end()) {
        auto t = tri_.find(std::u32string{p2, p1, c});
        double num = (t == tri_.end() ? 0.0 : double(t->second)) + kAdd;
        return -std::log(num / (double(tc->second) + kAdd * v));
    }
    auto bc = bi_ctx_.find(p1);
    if (bc != bi_ctx_.end()) {
        auto b = bi_.find(std::u32string{p1, c});
        double num = (b == bi_.end() ? 0.0 : double(b->second)) + kAdd;
        return -std::log(num / (double(bc->second) + kAdd * v));
    }
    auto u = uni_.find(c);
    double num = (u == uni_.end() ? 0.0 : double(u->second)) + kAdd;
    return -std::log(num / (double(total_) + kAdd * v));
}

LanguageModel LanguageModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("LanguageModel: cannot open " + path);
    std::vector<std::pair<std::u32string, long long>> counts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error("LanguageModel: bad line '" + line + "'");
        counts.push_back({decode_utf8(line.substr(0, tab)), std::stoll(line.substr(tab + 1))});
    }
    return from_counts(counts);
}

void LanguageModel::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("LanguageModel: cannot write " + path);
    for (const auto& [gram, count] : tri_)
        out << encode_utf8(gram) << "\t" << count << "\n";
}

}  // namespace stroketext
