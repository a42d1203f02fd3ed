/* helpers.hpp -- shared fixtures for the unit tests. */

#ifndef PPD_TESTS_HELPERS_HPP_
#define PPD_TESTS_HELPERS_HPP_

#include <functional>
#include <random>
#include <vector>

#include "ppd/words.hpp"

namespace ppd::testhelp {

inline Symbol sym(const std::string& name) { return Symbol::intern(name); }

inline Word word(const std::string& spaced) { return Word::parse(spaced); }

// All words of length <= max_len in shortlex order of `a`.
inline std::vector<Word> all_words(const Alphabet& a, size_t max_len) {
    std::vector<Word> out{Word()};
    size_t begin = 0;
    for (size_t len = 1; len <= max_len; ++len) {
        size_t end = out.size();
        for (size_t i = begin; i < end; ++i)
            for (size_t j = 0; j < a.size(); ++j) {
                Word w = out[i];
                w.push_back(a.at(j));
                out.push_back(w);
            }
        begin = end;
    }
    return out;
}

// Visits every word of length <= max_len without materializing the list.
inline void for_all_words(const Alphabet& a, size_t max_len,
                          const std::function<void(const Word&)>& fn) {
    Word w;
    std::function<void()> rec = [&]() {
        fn(w);
        if (w.length() == max_len) return;
        for (size_t j = 0; j < a.size(); ++j) {
            w.push_back(a.at(j));
            rec();
            w.pop_back();
        }
    };
    rec();
}

inline Word random_word(const Alphabet& a, size_t max_len, std::mt19937& rng) {
    std::uniform_int_distribution<size_t> len(0, max_len);
    std::uniform_int_distribution<size_t> pick(0, a.size() - 1);
    Word w;
    size_t n = len(rng);
    for (size_t i = 0; i < n; ++i) w.push_back(a.at(pick(rng)));
    return w;
}

}  // namespace ppd::testhelp

#endif
