#!/usr/bin/env python3
# Copyright 2026 The ctcdec Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Reference interpolated Kneser-Ney model.

Evaluates the recursive KN formula directly from raw counts (no backoff
tables, no ARPA). The values it prints are frozen into ngram_lm_test.cc and
acceptance_test.cc; rerun it after changing any fixture corpus.

  adjusted count a(g) = raw count          if |g| = order or g starts with <s>
                      = #distinct v: c(v g) > 0   otherwise
  P(w|h) = max(a(hw) - D, 0) / A(h) + D * n(h) / A(h) * P(w|h[1:])
  P(w)   = max(a(w) - D, 0) / A    + D * n / A / |W|
where A(h) = sum_v a(hv), n(h) = #{v: a(hv) > 0}, W = vocabulary minus <s>.
"""

import math
from collections import Counter


class KnOracle:
    def __init__(self, sentences, order, discount=0.75):
        self.order = order
        self.d = discount
        self.counts = [Counter() for _ in range(order + 1)]
        for s in sentences:
            toks = ["<s>"] + s + ["</s>"]
            for i in range(1, len(toks)):
                for k in range(1, order + 1):
                    if i - k + 1 < 0:
                        break
                    self.counts[k][tuple(toks[i - k + 1:i + 1])] += 1
        self.vocab = sorted({t for s in sentences for t in s} | {"</s>", "<unk>"})

    def adj(self, g):
        k = len(g)
        if k == self.order or g[0] == "<s>":
            return self.counts[k].get(g, 0)
        return len({h for h in self.counts[k + 1] if h[1:] == g})

    def prob(self, w, h=()):
        h = tuple(h)[-(self.order - 1):] if self.order > 1 else ()
        if w not in self.vocab:
            w = "<unk>"
        h = tuple(x if x in self.vocab or x == "<s>" else "<unk>" for x in h)
        return self._prob(w, h)

    def _prob(self, w, h):
        if not h:
            a = [self.adj((v,)) for v in self.vocab]
            total = sum(a)
            n = sum(1 for x in a if x > 0)
            return (max(self.adj((w,)) - self.d, 0) / total
                    + self.d * n / total / len(self.vocab))
        a = [self.adj(h + (v,)) for v in self.vocab]
        total = sum(a)
        if total == 0:
            return self._prob(w, h[1:])
        n = sum(1 for x in a if x > 0)
        return (max(self.adj(h + (w,)) - self.d, 0) / total
                + self.d * n / total * self._prob(w, h[1:]))


def char_tokens(line):
    return ["<sp>" if c == " " else c for c in line]


def bpc(model, lines):
    bits, n = 0.0, 0
    for line in lines:
        toks = char_tokens(line) + ["</s>"]
        hist = ["<s>"]
        for t in toks:
            bits -= math.log2(model.prob(t, hist))
            hist.append(t)
            n += 1
    return bits / n


def show(name, value):
    print(f"{name} = {value!r}")


if __name__ == "__main__":
    m = KnOracle([char_tokens("ab")] * 3, order=2)
    show("char 'ab'x3 o2 P(b|a)", m.prob("b", ["a"]))
    show("char 'ab'x3 o2 P(</s>|a)", m.prob("</s>", ["a"]))

    m = KnOracle([char_tokens("aaab")], order=1)
    for w in ["a", "b", "</s>", "<unk>"]:
        show(f"char 'aaab' o1 P({w})", m.prob(w))

    m = KnOracle([s.split() for s in ["a b", "a b", "a c"]], order=2)
    show("word 'a b|a b|a c' o2 P(b|a)", m.prob("b", ["a"]))
    show("word 'a b|a b|a c' o2 P(c|a)", m.prob("c", ["a"]))
    show("word 'a b|a b|a c' o2 P(a|<s>)", m.prob("a", ["<s>"]))
    show("word 'a b|a b|a c' o2 P(c|b)", m.prob("c", ["b"]))

    m = KnOracle([["a", "a", "a", "b"]], order=1)
    for w in ["a", "b", "</s>", "<unk>"]:
        show(f"word 'a a a b' o1 P({w})", m.prob(w))

    trigram_corpus = ["the cat sat", "the cat ran", "a cat sat", "the dog sat",
                      "a dog ran home"]
    m = KnOracle([s.split() for s in trigram_corpus], order=3)
    for w, h in [("sat", ["the", "cat"]), ("ran", ["a", "cat"]),
                 ("home", ["cat", "ran"]), ("dog", ["<s>", "the"]),
                 ("the", ["<s>"]), ("sat", ["dog", "dog"]),
                 ("zebra", ["the", "cat"]), ("</s>", ["cat", "sat"])]:
        show(f"word trigram P({w}|{' '.join(h)})", m.prob(w, h))

    mixed = ["the cat sat on the mat", "a dog ran to the park",
             "the cat ran after the dog", "she sells sea shells",
             "the park is green", "a cat is on the mat"]
    held_out = ["the dog sat on the mat", "a cat ran to the park"]
    m5 = KnOracle([char_tokens(s) for s in mixed], order=5)
    show("char mixed o5 BPC held-out", bpc(m5, held_out))
    show("char mixed o5 BPC train", bpc(m5, mixed))
    m3 = KnOracle([char_tokens(s) for s in mixed], order=3)
    show("char mixed o3 BPC held-out", bpc(m3, held_out))
    show("char mixed o3 P(t|<s> <s>)", m3.prob("t", ["<s>"]))
    show("char mixed o3 P(e|t h)", m3.prob("e", ["t", "h"]))
    show("char mixed o3 P(<sp>|h e)", m3.prob("<sp>", ["h", "e"]))
