// Copyright 2026 The prepub Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Porter's stemming algorithm as published with his reference ANSI C code.
// The reference code differs from the 1980 description in two rules of
// step 2 ("bli" -> "ble" instead of "abli" -> "able", plus "logi" -> "log");
// the reference vocabulary output depends on both.

#include <string>

#include "prepub/textprep.hpp"

namespace prepub::textprep {
namespace {

class PorterStemmer {
 public:
  explicit PorterStemmer(std::string_view word) : b_(word), k_(static_cast<int>(word.size()) - 1) {}

  std::string run() {
    if (k_ <= 1) return b_;
    step1ab();
    if (k_ > 0) {
      step1c();
      step2();
      step3();
      step4();
      step5();
    }
    return b_.substr(0, static_cast<std::size_t>(k_ + 1));
  }

 private:
  bool cons(int i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b[0..j].
  int m() const {
    int n = 0;
    int i = 0;
    for (;;) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_consonant(int j) const {
    if (j < 1) return false;
    if (b_[j] != b_[j - 1]) return false;
    return cons(j);
  }

  // consonant-vowel-consonant ending at i, last consonant not w, x or y.
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char ch = b_[i];
    return ch != 'w' && ch != 'x' && ch != 'y';
  }

  bool ends(std::string_view s) {
    const int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (s.back() != b_[k_]) return false;
    if (b_.compare(k_ - len + 1, len, s) != 0) return false;
    j_ = k_ - len;
    return true;
  }

  void set_to(std::string_view s) {
    b_.replace(j_ + 1, std::string::npos, s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void replace_if_measure(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  void truncate() { b_.resize(static_cast<std::size_t>(k_ + 1)); }

  void step1ab() {
    if (b_[k_] == 's') {
      if (ends("sses")) {
        k_ -= 2;
      } else if (ends("ies")) {
        set_to("i");
      } else if (b_[k_ - 1] != 's') {
        --k_;
      }
    }
    truncate();
    if (ends("eed")) {
      if (m() > 0) --k_;
    } else if ((ends("ed") || ends("ing")) && vowel_in_stem()) {
      k_ = j_;
      truncate();
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_consonant(k_)) {
        --k_;
        const char ch = b_[k_];
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else if (m() == 1 && cvc(k_)) {
        j_ = k_;
        set_to("e");
      }
    }
    truncate();
  }

  void step1c() {
    if (ends("y") && vowel_in_stem()) b_[k_] = 'i';
  }

  bool rule(std::string_view suffix, std::string_view replacement) {
    if (!ends(suffix)) return false;
    replace_if_measure(replacement);
    return true;
  }

  void step2() {
    switch (b_[k_ - 1]) {
      case 'a':
        rule("ational", "ate") || rule("tional", "tion");
        break;
      case 'c':
        rule("enci", "ence") || rule("anci", "ance");
        break;
      case 'e':
        rule("izer", "ize");
        break;
      case 'l':
        rule("bli", "ble") || rule("alli", "al") || rule("entli", "ent") || rule("eli", "e") ||
            rule("ousli", "ous");
        break;
      case 'o':
        rule("ization", "ize") || rule("ation", "ate") || rule("ator", "ate");
        break;
      case 's':
        rule("alism", "al") || rule("iveness", "ive") || rule("fulness", "ful") ||
            rule("ousness", "ous");
        break;
      case 't':
        rule("aliti", "al") || rule("iviti", "ive") || rule("biliti", "ble");
        break;
      case 'g':
        rule("logi", "log");
        break;
      default:
        break;
    }
    truncate();
  }

  void step3() {
    switch (b_[k_]) {
      case 'e':
        rule("icate", "ic") || rule("ative", "") || rule("alize", "al");
        break;
      case 'i':
        rule("iciti", "ic");
        break;
      case 'l':
        rule("ical", "ic") || rule("ful", "");
        break;
      case 's':
        rule("ness", "");
        break;
      default:
        break;
    }
    truncate();
  }

  void step4() {
    bool matched = false;
    switch (b_[k_ - 1]) {
      case 'a':
        matched = ends("al");
        break;
      case 'c':
        matched = ends("ance") || ends("ence");
        break;
      case 'e':
        matched = ends("er");
        break;
      case 'i':
        matched = ends("ic");
        break;
      case 'l':
        matched = ends("able") || ends("ible");
        break;
      case 'n':
        matched = ends("ant") || ends("ement") || ends("ment") || ends("ent");
        break;
      case 'o':
        matched = (ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) || ends("ou");
        break;
      case 's':
        matched = ends("ism");
        break;
      case 't':
        matched = ends("ate") || ends("iti");
        break;
      case 'u':
        matched = ends("ous");
        break;
      case 'v':
        matched = ends("ive");
        break;
      case 'z':
        matched = ends("ize");
        break;
      default:
        break;
    }
    if (matched && m() > 1) {
      k_ = j_;
      truncate();
    }
  }

  void step5() {
    j_ = k_;
    if (b_[k_] == 'e') {
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(k_ - 1))) --k_;
    }
    if (b_[k_] == 'l' && double_consonant(k_) && m() > 1) --k_;
    truncate();
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) {
  if (word.empty()) return {};
  return PorterStemmer(word).run();
}

}  // namespace prepub::textprep
