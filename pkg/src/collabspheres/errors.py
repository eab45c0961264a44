"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CollabSpheresError(Exception):
    """Base class for all package errors."""


class CorpusError(CollabSpheresError):
    """Base class for corpus ingest and validation failures."""


class ParseError(CorpusError):
    """A corpus file line could not be parsed or violates a per-record rule."""

    def __init__(self, file: str, line: int, reason: str):
        self.file = file
        self.line = line
        self.reason = reason
        super().__init__(f"{file}:{line}: {reason}")


class DuplicateIdError(CorpusError):
    """Two records of the same entity class share an identifier."""

    def __init__(self, entity_class: str, entity_id: str):
        self.entity_class = entity_class
        self.entity_id = entity_id
        super().__init__(f"duplicate {entity_class} id {entity_id!r}")


class IntegrityError(CorpusError):
    """One or more records reference identifiers that do not exist."""

    def __init__(self, dangling: list[str]):
        self.dangling = list(dangling)
        super().__init__("dangling references: " + "; ".join(self.dangling))


class UnknownUserError(CollabSpheresError):
    def __init__(self, user_id: str):
        self.user_id = user_id
        super().__init__(f"unknown user {user_id!r}")


class UnknownItemError(CollabSpheresError):
    def __init__(self, item_id: str):
        self.item_id = item_id
        super().__init__(f"unknown item {item_id!r}")


class SelfComparisonError(CollabSpheresError):
    def __init__(self, user_id: str):
        self.user_id = user_id
        super().__init__(f"cannot compare user {user_id!r} with itself")


class MixedSubjectsError(CollabSpheresError):
    """Recommendation lists handed to the combiner name different subjects."""


class SessionError(CollabSpheresError):
    """Base class for sphere-session failures."""


class UnknownSessionError(SessionError):
    def __init__(self, session_id: str):
        self.session_id = session_id
        super().__init__(f"unknown session {session_id!r}")


class DuplicateContextItemError(SessionError):
    def __init__(self, item_id: str):
        self.item_id = item_id
        super().__init__(f"item {item_id!r} is already in the context")


class SelfContextError(SessionError):
    def __init__(self, user_id: str):
        self.user_id = user_id
        super().__init__(f"the center user {user_id!r} cannot be a context item")


class NotInContextError(SessionError):
    def __init__(self, item_id: str):
        self.item_id = item_id
        super().__init__(f"item {item_id!r} is not in the context")
