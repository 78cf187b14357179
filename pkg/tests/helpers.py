"""Small shared builders for corpus-shaped test data."""

from datetime import datetime, timezone

from genderwords.corpus import Corpus, Post
from genderwords.gender import GenderLabel

_GENDERS = {"f": GenderLabel.FEMALE, "m": GenderLabel.MALE, "u": GenderLabel.UNKNOWN}


def ts(day: int = 0, hour: int = 0, minute: int = 0, second: int = 0):
    return datetime(2020, 3, 10 + day, hour, minute, second, tzinfo=timezone.utc)


def mk_post(pid, text, gender="u", day=0, hour=0, name="Someone"):
    return Post(
        id=str(pid),
        timestamp=ts(day=day, hour=hour),
        display_name=name,
        text=text,
        gender=_GENDERS[gender],
    )


def mk_corpus(*posts):
    ordered = sorted(posts, key=lambda p: p.timestamp)
    return Corpus(posts=list(ordered), provenance={"source": "test"})
