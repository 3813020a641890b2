"""Fictional vocabulary for rendering: nouns, adjectives, entity names."""
from __future__ import annotations

from dataclasses import dataclass, field

# Fictional concept nouns in the "wumpus" family. The list is fixed so
# datasets are reproducible; per-example sampling is without replacement.
NOUNS = (
    "wumpus", "tumpus", "rompus", "lempus", "impus", "yumpus", "jompus",
    "dumpus", "vumpus", "sterpus", "brimpus", "grimpus", "lorpus",
    "shumpus", "gorpus", "zumpus", "numpus", "felpus", "quimpus",
    "storpus", "terpus", "kerpus", "morpus", "porpus", "serpus",
    "timpus", "virpus", "worpus", "yerpus", "chorpus", "dalpus",
    "hilpus", "garpus", "bompus", "fompus", "gompus", "hompus",
    "jelpus", "kampus", "lampus",
)

ADJECTIVES = (
    "dull", "opaque", "brown", "shy", "bitter", "amenable", "fruity",
    "hot", "translucent", "liquid", "floral", "earthy", "mean", "blue",
    "small", "kind",
)

NAMES = ("Alex", "Polly", "Sally", "Fae", "Max")


def pluralize(noun: str) -> str:
    if noun.endswith(("s", "x", "ch", "sh")):
        return noun + "es"
    if noun.endswith("y") and noun[-2] not in "aeiou":
        return noun[:-1] + "ies"
    return noun + "s"


def article(word: str) -> str:
    return "an" if word[0] in "aeiou" else "a"


class VocabularyError(KeyError):
    pass


@dataclass
class Vocabulary:
    """Maps predicate symbols to their surface part of speech.

    Predicates are the surface words themselves ("wumpus", "dull");
    entity symbols are lowercase names ("alex").
    """

    nouns: tuple = NOUNS
    adjectives: tuple = ADJECTIVES
    names: tuple = NAMES
    _plural_to_noun: dict = field(init=False, repr=False)

    def __post_init__(self):
        overlap = set(self.nouns) & set(self.adjectives)
        if overlap:
            raise VocabularyError(f"words are both noun and adjective: {overlap}")
        if len(set(self.nouns)) != len(self.nouns) or len(set(self.adjectives)) != len(self.adjectives):
            raise VocabularyError("duplicate vocabulary words")
        self._plural_to_noun = {pluralize(n): n for n in self.nouns}

    def is_noun(self, predicate: str) -> bool:
        return predicate in self.nouns

    def is_adjective(self, predicate: str) -> bool:
        return predicate in self.adjectives

    def knows(self, predicate: str) -> bool:
        return self.is_noun(predicate) or self.is_adjective(predicate)

    def plural(self, noun: str) -> str:
        if noun not in self.nouns:
            raise VocabularyError(f"unknown noun: {noun!r}")
        return pluralize(noun)

    def singular(self, plural: str):
        """Inverse of plural(); None when the word is not a known plural."""
        return self._plural_to_noun.get(plural)

    def entity_symbol(self, name: str) -> str:
        return name.lower()

    def entity_name(self, symbol: str) -> str:
        return symbol.capitalize()

    def extended(self, nouns=(), adjectives=(), names=()) -> "Vocabulary":
        return Vocabulary(
            nouns=self.nouns + tuple(n for n in nouns if n not in self.nouns),
            adjectives=self.adjectives
            + tuple(a for a in adjectives if a not in self.adjectives),
            names=self.names + tuple(n for n in names if n not in self.names),
        )


DEFAULT_VOCABULARY = Vocabulary()

# Real-word vocabulary used by the golden fixtures and docs examples.
FIXTURE_VOCABULARY = Vocabulary(
    nouns=("dog", "mammal", "cat", "carnivore", "feline", "vertebrate"),
    adjectives=(
        "mean", "blue", "orange", "cold-blooded", "warm-blooded",
        "graceful", "soft", "kind", "herbivorous",
    ),
    names=NAMES,
)
