"""The generalized word embedding: repetition is free onto idempotent letters.

Classically a word embeds into another by matching letters at strictly
increasing positions.  Here the witness map may stall on a position whose
target letter is idempotent, so (a,a) fits into a single idempotent a.
"""
import numpy as np

from idealforge.higman import (
    AtomAlphabet,
    HWord,
    bounded_word_monoid,
    canonical_word,
    equiv_H,
    hword_primes_check,
    leq_H,
    word_is_idempotent,
)
from idealforge.monoid import primes
from idealforge.qo import FiniteQO, validate

classical = AtomAlphabet(FiniteQO(["a", "b"], np.eye(2, dtype=bool)), idem=())
u = HWord(classical, [0, 0])
v = HWord(classical, [0])
print("classically (a,a) <= (a):", leq_H(u, v))

# same carrier, but a sits below an idempotent top t
q = validate(["a", "b", "t"], [("a", "t"), ("b", "t")], close=True)
alpha = AtomAlphabet(q, idem=(q.index("t"),))
w = HWord(alpha, [q.index("a"), q.index("b"), q.index("a")])
top = HWord(alpha, [q.index("t")])
print("(a,b,a) <= (t):", leq_H(w, top))
print("(t) <= (a,b,a):", leq_H(top, w))

tt = HWord(alpha, [q.index("t"), q.index("t")])
print("(t,t) ~ (t):", equiv_H(tt, top), " canonical:", canonical_word(tt).labels)
print("(a,t) idempotent as a word:", word_is_idempotent(HWord(alpha, [0, 2])))
print("(a,b) idempotent as a word:", word_is_idempotent(HWord(alpha, [0, 1])))

# words up to a length bound form a monoidal qo; its primes are the letter
# classes (here the t class is fat: every word containing t is equivalent to t)
m = bounded_word_monoid(alpha, maxlen=3, reduce=True)
print("bounded word monoid size:", m.n)
reps = set()
for i in primes(m):
    letters = [q.index(x) for x in m.label(i).split(".")]
    reps.add(".".join(canonical_word(HWord(alpha, letters)).labels))
print("prime classes:", sorted(reps))
print(hword_primes_check(alpha, maxlen=3).passed and "letter classes are the only primes")
