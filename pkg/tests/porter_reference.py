"""Independent Porter-stemmer oracle for cross-checking focrawl.porter.

A direct transliteration of the classic public-domain ANSI C reference
program (buffer with k/j indices), with its documented departures from the
1980 publication removed: no short-word guard, no logi->log rule, and
abli->able kept. This is deliberately a different code shape from the
package implementation so the two can check each other.
"""


class _Stemmer:
    def __init__(self, word: str):
        self.b = list(word)
        self.k = len(word) - 1
        self.j = 0

    def cons(self, i: int) -> bool:
        ch = self.b[i]
        if ch in "aeiou":
            return False
        if ch == "y":
            return True if i == 0 else not self.cons(i - 1)
        return True

    def m(self) -> int:
        n = 0
        i = 0
        while True:
            if i > self.j:
                return n
            if not self.cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > self.j:
                    return n
                if self.cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > self.j:
                    return n
                if not self.cons(i):
                    break
                i += 1
            i += 1

    def vowelinstem(self) -> bool:
        return any(not self.cons(i) for i in range(self.j + 1))

    def doublec(self, j: int) -> bool:
        if j < 1:
            return False
        if self.b[j] != self.b[j - 1]:
            return False
        return self.cons(j)

    def cvc(self, i: int) -> bool:
        if i < 2 or not self.cons(i) or self.cons(i - 1) or not self.cons(i - 2):
            return False
        return self.b[i] not in "wxy"

    def ends(self, s: str) -> bool:
        length = len(s)
        if length > self.k + 1:
            return False
        if self.b[self.k - length + 1:self.k + 1] != list(s):
            return False
        self.j = self.k - length
        return True

    def setto(self, s: str) -> None:
        self.b[self.j + 1:] = list(s)
        self.k = self.j + len(s)

    def r(self, s: str) -> None:
        if self.m() > 0:
            self.setto(s)

    def step1ab(self) -> None:
        if self.b[self.k] == "s":
            if self.ends("sses"):
                self.k -= 2
            elif self.ends("ies"):
                self.setto("i")
            elif self.k == 0 or self.b[self.k - 1] != "s":
                self.k -= 1
        if self.ends("eed"):
            if self.m() > 0:
                self.k -= 1
        elif (self.ends("ed") or self.ends("ing")) and self.vowelinstem():
            self.k = self.j
            if self.ends("at"):
                self.setto("ate")
            elif self.ends("bl"):
                self.setto("ble")
            elif self.ends("iz"):
                self.setto("ize")
            elif self.doublec(self.k):
                self.k -= 1
                if self.b[self.k] in "lsz":
                    self.k += 1
            elif self.m() == 1 and self.cvc(self.k):
                self.setto("e")

    def step1c(self) -> None:
        if self.ends("y") and self.vowelinstem():
            self.b[self.k] = "i"

    def step2(self) -> None:
        if self.k < 1:
            return
        ch = self.b[self.k - 1]
        if ch == "a":
            if self.ends("ational"):
                self.r("ate")
            elif self.ends("tional"):
                self.r("tion")
        elif ch == "c":
            if self.ends("enci"):
                self.r("ence")
            elif self.ends("anci"):
                self.r("ance")
        elif ch == "e":
            if self.ends("izer"):
                self.r("ize")
        elif ch == "l":
            if self.ends("abli"):
                self.r("able")
            elif self.ends("alli"):
                self.r("al")
            elif self.ends("entli"):
                self.r("ent")
            elif self.ends("eli"):
                self.r("e")
            elif self.ends("ousli"):
                self.r("ous")
        elif ch == "o":
            if self.ends("ization"):
                self.r("ize")
            elif self.ends("ation"):
                self.r("ate")
            elif self.ends("ator"):
                self.r("ate")
        elif ch == "s":
            if self.ends("alism"):
                self.r("al")
            elif self.ends("iveness"):
                self.r("ive")
            elif self.ends("fulness"):
                self.r("ful")
            elif self.ends("ousness"):
                self.r("ous")
        elif ch == "t":
            if self.ends("aliti"):
                self.r("al")
            elif self.ends("iviti"):
                self.r("ive")
            elif self.ends("biliti"):
                self.r("ble")

    def step3(self) -> None:
        ch = self.b[self.k]
        if ch == "e":
            if self.ends("icate"):
                self.r("ic")
            elif self.ends("ative"):
                self.r("")
            elif self.ends("alize"):
                self.r("al")
        elif ch == "i":
            if self.ends("iciti"):
                self.r("ic")
        elif ch == "l":
            if self.ends("ical"):
                self.r("ic")
            elif self.ends("ful"):
                self.r("")
        elif ch == "s":
            if self.ends("ness"):
                self.r("")

    def step4(self) -> None:
        if self.k < 1:
            return
        ch = self.b[self.k - 1]
        if ch == "a":
            if not self.ends("al"):
                return
        elif ch == "c":
            if not (self.ends("ance") or self.ends("ence")):
                return
        elif ch == "e":
            if not self.ends("er"):
                return
        elif ch == "i":
            if not self.ends("ic"):
                return
        elif ch == "l":
            if not (self.ends("able") or self.ends("ible")):
                return
        elif ch == "n":
            if not (self.ends("ant") or self.ends("ement")
                    or self.ends("ment") or self.ends("ent")):
                return
        elif ch == "o":
            if self.ends("ion") and self.j >= 0 and self.b[self.j] in "st":
                pass
            elif not self.ends("ou"):
                return
        elif ch == "s":
            if not self.ends("ism"):
                return
        elif ch == "t":
            if not (self.ends("ate") or self.ends("iti")):
                return
        elif ch == "u":
            if not self.ends("ous"):
                return
        elif ch == "v":
            if not self.ends("ive"):
                return
        elif ch == "z":
            if not self.ends("ize"):
                return
        else:
            return
        if self.m() > 1:
            self.k = self.j

    def step5(self) -> None:
        self.j = self.k
        if self.b[self.k] == "e":
            a = self.m()
            if a > 1 or (a == 1 and not self.cvc(self.k - 1)):
                self.k -= 1
        if self.b[self.k] == "l" and self.doublec(self.k) and self.m() > 1:
            self.k -= 1

    def result(self) -> str:
        return "".join(self.b[: self.k + 1])


def reference_stem(word: str) -> str:
    if not word:
        return word
    s = _Stemmer(word)
    s.step1ab()
    if s.k >= 0:
        s.step1c()
        s.step2()
        s.step3()
        s.step4()
        s.step5()
    return s.result()
