"""Lint rules for MaiBaam-style annotations.

Every rule has a stable id, a default severity and a guideline citation.
Rules consult the GermanLemma MISC attribute rather than surface forms for
closed-class checks, since Bavarian spelling varies while the German lemma
is stable. Rule output is a pure function of (sentence, config).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

from .conllu import (
    Diagnostic,
    Sentence,
    SEVERITY_ERROR,
    SEVERITY_REVIEW,
    SEVERITY_WARNING,
    Token,
    validate_structure,
)

UPOS_TAGS = frozenset({
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
})

DEPRELS = frozenset({
    "root", "nsubj", "nsubj:pass", "nsubj:outer", "obj", "iobj", "obl",
    "obl:arg", "obl:agent", "expl", "expl:pv", "vocative", "csubj",
    "csubj:pass", "ccomp", "xcomp", "advcl", "advcl:relcl", "aux",
    "aux:pass", "cop", "mark", "compound", "compound:prt", "dislocated",
    "discourse", "nmod", "nmod:poss", "appos", "acl", "acl:relcl", "det",
    "det:poss", "case", "amod", "nummod", "flat", "conj", "cc", "punct",
    "advmod", "fixed", "parataxis", "goeswith", "orphan", "reparandum",
    "list", "dep",
})

UNKNOWN_LEMMA = "<unknown>"


@dataclass(frozen=True)
class RuleDescriptor:
    rule_id: str
    default_severity: str
    guideline_ref: str | None
    description: str
    enabled_default: bool = True


RULES: tuple[RuleDescriptor, ...] = (
    RuleDescriptor("STRUCT.NO_ROOT", SEVERITY_ERROR, None,
                   "exactly one token must have head 0"),
    RuleDescriptor("STRUCT.MULTI_ROOT", SEVERITY_ERROR, None,
                   "exactly one token must have head 0"),
    RuleDescriptor("STRUCT.CYCLE", SEVERITY_ERROR, None,
                   "head chains must not revisit a token"),
    RuleDescriptor("STRUCT.HEAD_RANGE", SEVERITY_ERROR, None,
                   "head ids must stay within the sentence"),
    RuleDescriptor("STRUCT.ROOT_DEPREL", SEVERITY_ERROR, None,
                   'the head-0 token must use deprel "root"'),
    RuleDescriptor("STRUCT.PUNCT_CHILD", SEVERITY_ERROR, None,
                   "punctuation tokens must not head other tokens"),
    RuleDescriptor("STRUCT.MWT_OVERLAP", SEVERITY_ERROR, None,
                   "multi-word token ranges must not overlap"),
    RuleDescriptor("CORE.ENHANCED_UNSUPPORTED", SEVERITY_WARNING,
                   "General remarks",
                   "enhanced dependencies and empty nodes are not annotated"),
    RuleDescriptor("CORE.COLUMNS", SEVERITY_WARNING, "General remarks",
                   "LEMMA/XPOS/FEATS stay empty apart from Typo=Yes"),
    RuleDescriptor("CORE.BOM", SEVERITY_WARNING, None,
                   "file starts with a byte-order mark"),
    RuleDescriptor("VOCAB.UPOS", SEVERITY_ERROR, "§2",
                   "UPOS must be one of the 17 universal tags"),
    RuleDescriptor("VOCAB.DEPREL", SEVERITY_ERROR, "§3",
                   "deprel must be in the closed relation inventory"),
    RuleDescriptor("CLASS.COP", SEVERITY_ERROR, "§6.6",
                   'only forms of "sein" can be copulas'),
    RuleDescriptor("CLASS.PART", SEVERITY_ERROR, "§6.12",
                   'PART is reserved for "nicht" and "zu"'),
    RuleDescriptor("CLASS.AUX", SEVERITY_ERROR, "§7.2.1",
                   "AUX lemmas come from a closed auxiliary set"),
    RuleDescriptor("CLASS.USERNAME", SEVERITY_ERROR, "§6.4",
                   "the USERNAME placeholder is tagged PROPN"),
    RuleDescriptor("CLASS.PLACEHOLDER", SEVERITY_REVIEW, "§6.9",
                   "dummy placeholders are tagged X, ellipses SYM"),
    RuleDescriptor("REL.FIXED", SEVERITY_ERROR, "§6.11",
                   "fixed is limited to whitelisted expressions"),
    RuleDescriptor("REL.GOESWITH", SEVERITY_ERROR, "§6.20",
                   "goeswith parts follow their typo-marked head"),
    RuleDescriptor("REL.RELMARK", SEVERITY_ERROR, "§7.4.4",
                   "relative markers are SCONJ, not PRON"),
    RuleDescriptor("LEMMA.MISSING", SEVERITY_WARNING, "§5",
                   "tokens carry a GermanLemma MISC attribute"),
    RuleDescriptor("LEMMA.ON_MWT", SEVERITY_ERROR, "§5",
                   "multi-word token lines carry no lemma"),
    RuleDescriptor("LEMMA.NIMMA", SEVERITY_WARNING, "§5",
                   '"nimma" is lemmatized as "nicht mehr"'),
    RuleDescriptor("TYPO.CORRECT_SPACE", SEVERITY_ERROR, "§6.20",
                   "CorrectSpaceAfter=Yes pairs with SpaceAfter=No"),
    RuleDescriptor("TYPO.REVIEW", SEVERITY_REVIEW, "§6.20",
                   "Typo=Yes without goeswith parts needs a second look"),
    RuleDescriptor("MWT.SURFACE", SEVERITY_ERROR, "§1.5",
                   "MWT parts are substrings of the surface form"),
    RuleDescriptor("REVIEW.IOBJ", SEVERITY_REVIEW, "§6.8",
                   "iobj is reserved for rare second accusatives"),
    RuleDescriptor("REVIEW.APPOS_ORDER", SEVERITY_REVIEW, "§4.3",
                   "appositions normally follow their head"),
    RuleDescriptor("META.MISSING", SEVERITY_WARNING, "§1.3",
                   "required sentence metadata keys are present"),
    RuleDescriptor("META.GENRE", SEVERITY_ERROR, "§1.3",
                   "genre comes from the closed genre list"),
    RuleDescriptor("META.DIALECT", SEVERITY_ERROR, "§1.3",
                   "dialect_group comes from the closed group list"),
    RuleDescriptor("META.DIALECT_ORDER", SEVERITY_ERROR, "§1.3",
                   "unk (...) elaborations list groups north to south"),
    RuleDescriptor("META.DUP_ID", SEVERITY_ERROR, "§1.3",
                   "sent_id values are unique across the run"),
    RuleDescriptor("META.TEXT_MISMATCH", SEVERITY_ERROR, "§1.6",
                   "the text metadata matches the token forms"),
    RuleDescriptor("META.SOURCE", SEVERITY_WARNING, "§1.3",
                   "wiki/social sources are absolute URLs"),
)

RULES_BY_ID = {r.rule_id: r for r in RULES}

DEFAULT_COPULA_LEMMAS = frozenset({"sein"})
DEFAULT_PART_LEMMAS = frozenset({"nicht", "zu"})
DEFAULT_AUX_LEMMAS = frozenset({
    "sein", "haben", "werden", "tun",
    "können", "müssen", "sollen", "wollen", "dürfen", "mögen",
})
DEFAULT_FIXED_WHITELIST: tuple[tuple[str, ...], ...] = (
    ("ein", "paar"),
    ("ein", "wenig"),
    ("ein", "bisschen"),
    ("und", "zwar"),
    ("mehr", "als"),
    ("mehr", "wie"),
    ("weniger", "als"),
    ("weniger", "wie"),
    ("ein", "und", "derselbe"),
    ("bis", "zu"),
    ("gäin", "S"),
)
# fixed before guideline version 2.17, banned afterwards
DEFAULT_FIXED_VERSIONED: tuple[tuple[str, ...], ...] = (
    ("durch", "des"),
    ("duach", "des"),
    ("durch", "das"),
    ("fir", "des"),
    ("für", "das"),
)
DEFAULT_INTERJECTIONS = frozenset({
    "gäi", "gell", "gäins", "gäh", "gö", "mei", "sowas", "servus",
})
DEFAULT_PLACEHOLDER_X = frozenset({"A", "B", "C", "X", "Y", "Z", "XYZ", "XZY"})
DEFAULT_PLACEHOLDER_SYM = frozenset({"...", "…"})
DEFAULT_RELATIVE_MARKERS = frozenset({"wo", "was", "wie", "wej"})
DEFAULT_GENRES = frozenset({
    "wiki", "social", "fiction", "grammar examples", "non-fiction",
})
DIALECT_GROUPS_NORTH_TO_SOUTH = (
    "north", "northcentral", "central", "southcentral", "south",
)
URL_GENRES = frozenset({"wiki", "social"})


@dataclass(frozen=True)
class LintConfig:
    """Rule toggles, severity overrides and the closed-class lexicons."""

    severity_overrides: dict[str, str] = field(default_factory=dict)
    disabled_rules: frozenset[str] = frozenset()
    enabled_rules: frozenset[str] = frozenset()
    copula_lemmas: frozenset[str] = DEFAULT_COPULA_LEMMAS
    part_lemmas: frozenset[str] = DEFAULT_PART_LEMMAS
    aux_lemmas: frozenset[str] = DEFAULT_AUX_LEMMAS
    fixed_whitelist: tuple[tuple[str, ...], ...] = DEFAULT_FIXED_WHITELIST
    fixed_versioned: tuple[tuple[str, ...], ...] = DEFAULT_FIXED_VERSIONED
    interjections: frozenset[str] = DEFAULT_INTERJECTIONS
    placeholder_x_forms: frozenset[str] = DEFAULT_PLACEHOLDER_X
    placeholder_sym_forms: frozenset[str] = DEFAULT_PLACEHOLDER_SYM
    relative_markers: frozenset[str] = DEFAULT_RELATIVE_MARKERS
    genre_vocab: frozenset[str] = DEFAULT_GENRES
    dialect_order: tuple[str, ...] = DIALECT_GROUPS_NORTH_TO_SOUTH
    guideline_version: str = "2.17"
    typo_column: str = "either"  # "feats", "misc" or "either"
    punct_lemma_exempt: bool = True
    tokenizer_lexicon_path: str | None = None

    def rule_enabled(self, rule_id: str) -> bool:
        if rule_id in self.enabled_rules:
            return True
        if rule_id in self.disabled_rules:
            return False
        family = rule_id.split(".")[0] + ".*"
        if family in self.enabled_rules:
            return True
        if family in self.disabled_rules:
            return False
        desc = RULES_BY_ID.get(rule_id)
        return desc.enabled_default if desc else True

    def severity(self, rule_id: str) -> str:
        if rule_id in self.severity_overrides:
            return self.severity_overrides[rule_id]
        desc = RULES_BY_ID.get(rule_id)
        return desc.default_severity if desc else SEVERITY_WARNING

    def version_at_least(self, threshold: str) -> bool:
        return _version_tuple(self.guideline_version) >= _version_tuple(threshold)


def _version_tuple(version: str) -> tuple[int, ...]:
    parts = []
    for chunk in version.split("."):
        digits = "".join(ch for ch in chunk if ch.isdigit())
        parts.append(int(digits) if digits else 0)
    return tuple(parts)


def load_config(path: str) -> LintConfig:
    """Load a flat key=value config file.

    Recognized keys: guideline_version, typo_column, punct_lemma_exempt,
    rule.<ID>.severity, rule.<ID>.enabled, and lexicon.<name>.path entries
    pointing at plain word-list files (one entry per line, # comments;
    fixed-expression lists hold one space-separated sequence per line).
    """
    overrides: dict[str, str] = {}
    disabled: set[str] = set()
    enabled: set[str] = set()
    fields: dict[str, object] = {}
    base = os.path.dirname(os.path.abspath(path))

    lexicon_fields = {
        "copula": ("copula_lemmas", "set"),
        "part": ("part_lemmas", "set"),
        "aux": ("aux_lemmas", "set"),
        "fixed": ("fixed_whitelist", "sequences"),
        "fixed_versioned": ("fixed_versioned", "sequences"),
        "interjections": ("interjections", "set"),
        "placeholder_x": ("placeholder_x_forms", "set"),
        "placeholder_sym": ("placeholder_sym_forms", "set"),
        "relative_markers": ("relative_markers", "set"),
        "genres": ("genre_vocab", "set"),
        "dialect_groups": ("dialect_order", "tuple"),
    }

    with open(path, encoding="utf-8") as f:
        for line_no, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected key=value")
            key, value = line.split("=", 1)
            key, value = key.strip(), value.strip()
            if key.startswith("rule.") and key.endswith(".severity"):
                rule_id = key[len("rule."):-len(".severity")]
                if value not in (SEVERITY_ERROR, SEVERITY_WARNING, SEVERITY_REVIEW):
                    raise ValueError(f"{path}:{line_no}: bad severity {value!r}")
                overrides[rule_id] = value
            elif key.startswith("rule.") and key.endswith(".enabled"):
                rule_id = key[len("rule."):-len(".enabled")]
                (enabled if value.lower() in ("1", "true", "yes")
                 else disabled).add(rule_id)
            elif key.startswith("lexicon.") and key.endswith(".path"):
                name = key[len("lexicon."):-len(".path")]
                if name == "tokenizer":
                    fields["tokenizer_lexicon_path"] = os.path.join(base, value)
                    continue
                if name not in lexicon_fields:
                    raise ValueError(f"{path}:{line_no}: unknown lexicon {name!r}")
                attr, shape = lexicon_fields[name]
                entries = _read_word_list(os.path.join(base, value))
                if shape == "set":
                    fields[attr] = frozenset(entries)
                elif shape == "tuple":
                    fields[attr] = tuple(entries)
                else:
                    fields[attr] = tuple(tuple(e.split()) for e in entries)
            elif key == "guideline_version":
                fields["guideline_version"] = value
            elif key == "typo_column":
                if value not in ("feats", "misc", "either"):
                    raise ValueError(f"{path}:{line_no}: bad typo_column {value!r}")
                fields["typo_column"] = value
            elif key == "punct_lemma_exempt":
                fields["punct_lemma_exempt"] = value.lower() in ("1", "true", "yes")
            else:
                raise ValueError(f"{path}:{line_no}: unknown key {key!r}")

    return LintConfig(severity_overrides=overrides,
                      disabled_rules=frozenset(disabled),
                      enabled_rules=frozenset(enabled),
                      **fields)  # type: ignore[arg-type]


def _read_word_list(path: str) -> list[str]:
    entries = []
    with open(path, encoding="utf-8") as f:
        for raw in f:
            line = raw.strip()
            if line and not line.startswith("#"):
                entries.append(line)
    return entries


def _diag(cfg: LintConfig, s: Sentence, rule_id: str, message: str,
          token: Token | None = None, line: int | None = None) -> Diagnostic:
    desc = RULES_BY_ID[rule_id]
    return Diagnostic(
        rule_id=rule_id, severity=cfg.severity(rule_id), file=s.file,
        line=line if line is not None else (token.line if token else s.line),
        sentence_id=s.sent_id, token_id=token.id if token else None,
        message=message, guideline_ref=desc.guideline_ref,
    )


def _has_typo_flag(t: Token, cfg: LintConfig) -> bool:
    in_feats = t.feats_value("Typo") == "Yes"
    in_misc = t.misc_value("Typo") == "Yes"
    if cfg.typo_column == "feats":
        return in_feats
    if cfg.typo_column == "misc":
        return in_misc
    return in_feats or in_misc


def _goeswith_dependents(s: Sentence) -> dict[int, list[Token]]:
    deps: dict[int, list[Token]] = {}
    for t in s.tokens:
        if t.deprel == "goeswith":
            deps.setdefault(t.head, []).append(t)
    for group in deps.values():
        group.sort(key=lambda t: t.id)
    return deps


def rule_upos_vocabulary(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """VOCAB.UPOS: every UPOS value is one of the 17 universal tags."""
    return [
        _diag(cfg, s, "VOCAB.UPOS", f"unknown UPOS tag {t.upos!r}", t)
        for t in s.tokens if t.upos not in UPOS_TAGS
    ]


def rule_deprel_vocabulary(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """VOCAB.DEPREL: deprels come from the closed set; "root" only on head 0."""
    diags = []
    for t in s.tokens:
        if t.deprel not in DEPRELS:
            diags.append(_diag(cfg, s, "VOCAB.DEPREL",
                               f"unknown deprel {t.deprel!r}", t))
        elif t.deprel == "root" and t.head != 0:
            diags.append(_diag(cfg, s, "VOCAB.DEPREL",
                               f'deprel "root" on token with head {t.head}', t))
    return diags


def _checkable_lemma(t: Token) -> str | None:
    lemma = t.german_lemma
    if lemma is None or lemma == UNKNOWN_LEMMA:
        return None
    return lemma


def rule_copula(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """CLASS.COP: copulas must be forms of "sein" (by GermanLemma)."""
    diags = []
    for t in s.tokens:
        if t.deprel == "cop":
            lemma = _checkable_lemma(t)
            if lemma is not None and lemma not in cfg.copula_lemmas:
                diags.append(_diag(cfg, s, "CLASS.COP",
                                   f"copula lemma {lemma!r} is not allowed; "
                                   f"verbs like werden/bleiben are full verbs", t))
    return diags


def rule_part_closed_class(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """CLASS.PART: PART tokens carry lemma "nicht" or "zu"."""
    diags = []
    for t in s.tokens:
        if t.upos == "PART":
            lemma = _checkable_lemma(t)
            if lemma is not None and lemma not in cfg.part_lemmas:
                diags.append(_diag(cfg, s, "CLASS.PART",
                                   f"PART with lemma {lemma!r}; modal particles "
                                   f"are tagged ADV", t))
    return diags


def rule_aux_closed_class(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """CLASS.AUX: AUX lemmas come from the configured auxiliary set."""
    diags = []
    for t in s.tokens:
        if t.upos == "AUX":
            lemma = _checkable_lemma(t)
            if lemma is not None and lemma not in cfg.aux_lemmas:
                diags.append(_diag(cfg, s, "CLASS.AUX",
                                   f"AUX with lemma {lemma!r} outside the "
                                   f"auxiliary set", t))
    return diags


def _matches_sequence(span: list[Token], entry: tuple[str, ...]) -> bool:
    if len(span) != len(entry):
        return False
    for t, word in zip(span, entry):
        w = word.casefold()
        if t.form.casefold() != w and (t.german_lemma or "").casefold() != w:
            return False
    return True


def rule_fixed_whitelist(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """REL.FIXED: fixed spans match the whitelist and follow their head."""
    diags = []
    spans: dict[int, list[Token]] = {}
    for t in s.tokens:
        if t.deprel == "fixed":
            spans.setdefault(t.head, []).append(t)
    for head_id in sorted(spans):
        head = s.token_by_id(head_id)
        if head is None:
            continue
        deps = sorted(spans[head_id], key=lambda t: t.id)
        expected = list(range(head.id + 1, head.id + 1 + len(deps)))
        if [t.id for t in deps] != expected:
            diags.append(_diag(cfg, s, "REL.FIXED",
                               "fixed dependents must immediately follow "
                               "their head", deps[0]))
            continue
        span = [head] + deps
        words = " ".join(t.form for t in span)
        if any(_matches_sequence(span, e) for e in cfg.fixed_versioned):
            if cfg.version_at_least("2.17"):
                diags.append(_diag(cfg, s, "REL.FIXED",
                                   f'"{words}" is no longer annotated as a '
                                   f"fixed expression", head))
            continue
        if not any(_matches_sequence(span, e) for e in cfg.fixed_whitelist):
            diags.append(_diag(cfg, s, "REL.FIXED",
                               f'"{words}" is not a whitelisted fixed '
                               f"expression", head))
    return diags


def rule_goeswith_shape(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """REL.GOESWITH: parts follow a typo-marked, lemma-bearing head."""
    diags = []
    for head_id, deps in sorted(_goeswith_dependents(s).items()):
        head = s.token_by_id(head_id)
        if head is None:
            diags.append(_diag(cfg, s, "REL.GOESWITH",
                               "goeswith dependent without a head token",
                               deps[0]))
            continue
        expected = list(range(head.id + 1, head.id + 1 + len(deps)))
        if [t.id for t in deps] != expected:
            diags.append(_diag(cfg, s, "REL.GOESWITH",
                               "goeswith parts must contiguously follow "
                               "their head", deps[0]))
        if not _has_typo_flag(head, cfg):
            diags.append(_diag(cfg, s, "REL.GOESWITH",
                               "goeswith head must carry Typo=Yes", head))
        if head.german_lemma is None:
            diags.append(_diag(cfg, s, "REL.GOESWITH",
                               "goeswith head carries the lemma of the whole "
                               "word", head))
        for d in deps:
            if d.german_lemma is not None:
                diags.append(_diag(cfg, s, "REL.GOESWITH",
                                   "goeswith dependents are not lemmatized", d))
    return diags


def rule_lemma_conventions(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """LEMMA.*: GermanLemma presence, MWT exemption, and "nimma"."""
    diags = []
    goeswith_ids = {t.id for t in s.tokens if t.deprel == "goeswith"}
    for t in s.tokens:
        lemma = t.german_lemma
        if lemma is None:
            if t.id in goeswith_ids:
                continue
            if t.upos == "PUNCT" and cfg.punct_lemma_exempt:
                continue
            diags.append(_diag(cfg, s, "LEMMA.MISSING",
                               "token has no GermanLemma", t))
        elif t.form.casefold() == "nimma" and lemma != "nicht mehr":
            diags.append(_diag(cfg, s, "LEMMA.NIMMA",
                               f'"nimma" must be lemmatized "nicht mehr", '
                               f"got {lemma!r}", t))
    for span in s.mwt_spans:
        if span.misc_value("GermanLemma") is not None:
            diags.append(_diag(cfg, s, "LEMMA.ON_MWT",
                               "multi-word token lines carry no lemma",
                               line=span.line or s.line))
    return diags


def rule_typo_features(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """TYPO.*: CorrectSpaceAfter pairing and stray Typo=Yes flags."""
    diags = []
    heads_with_goeswith = _goeswith_dependents(s)
    for t in s.tokens:
        if t.misc_value("CorrectSpaceAfter") == "Yes" and \
                t.misc_value("SpaceAfter") != "No":
            diags.append(_diag(cfg, s, "TYPO.CORRECT_SPACE",
                               "CorrectSpaceAfter=Yes requires SpaceAfter=No "
                               "on the same token", t))
        if _has_typo_flag(t, cfg) and t.id not in heads_with_goeswith and \
                t.misc_value("CorrectSpaceAfter") is None:
            diags.append(_diag(cfg, s, "TYPO.REVIEW",
                               "Typo=Yes without goeswith parts: check the "
                               "form", t))
    return diags


def rule_mwt_shape(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """MWT.SURFACE: covered forms concatenate exactly to the surface."""
    diags = []
    for span in s.mwt_spans:
        if span.last_id == span.first_id or span.last_id > len(s.tokens):
            diags.append(_diag(cfg, s, "MWT.SURFACE",
                               f"range {span.first_id}-{span.last_id} must "
                               f"cover at least two tokens",
                               line=span.line or s.line))
            continue
        covered = "".join(t.form for t in s.tokens[span.first_id - 1:span.last_id])
        if covered != span.surface_form:
            diags.append(_diag(cfg, s, "MWT.SURFACE",
                               f"token forms {covered!r} do not concatenate to "
                               f"surface {span.surface_form!r} (split into "
                               f"substrings, do not normalize)",
                               line=span.line or s.line))
    return diags


def rule_placeholder_tags(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """CLASS.USERNAME / CLASS.PLACEHOLDER: dummy token tagging."""
    diags = []
    for t in s.tokens:
        if t.form == "USERNAME":
            if t.upos != "PROPN":
                diags.append(_diag(cfg, s, "CLASS.USERNAME",
                                   f"USERNAME must be PROPN, got {t.upos}", t))
        elif t.form in cfg.placeholder_x_forms and t.upos != "X":
            diags.append(_diag(cfg, s, "CLASS.PLACEHOLDER",
                               f"{t.form!r} looks like a dummy placeholder; "
                               f"those are tagged X", t))
        elif t.form in cfg.placeholder_sym_forms and \
                t.upos not in ("SYM", "PUNCT"):
            diags.append(_diag(cfg, s, "CLASS.PLACEHOLDER",
                               f"{t.form!r} used as a name placeholder is "
                               f"tagged SYM", t))
    return diags


def rule_relative_marker(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """REL.RELMARK: invariant relativizers with deprel mark are SCONJ."""
    diags = []
    for t in s.tokens:
        if t.deprel != "mark":
            continue
        if t.upos == "PRON":
            diags.append(_diag(cfg, s, "REL.RELMARK",
                               "PRON with deprel mark: relative markers are "
                               "SCONJ, relative pronouns take nsubj/obj/...", t))
        elif t.form.casefold() in cfg.relative_markers and t.upos != "SCONJ":
            diags.append(_diag(cfg, s, "REL.RELMARK",
                               f"relative marker {t.form!r} must be SCONJ, "
                               f"got {t.upos}", t))
    return diags


def rule_review_hints(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """REVIEW.*: advisory flags that never block; negative concord is fine."""
    diags = []
    for t in s.tokens:
        if t.deprel == "iobj":
            diags.append(_diag(cfg, s, "REVIEW.IOBJ",
                               "iobj is reserved for the rare second "
                               "accusative; dative objects take obl:arg", t))
        if t.deprel == "appos":
            head = s.token_by_id(t.head)
            if head is not None and head.id > t.id:
                diags.append(_diag(cfg, s, "REVIEW.APPOS_ORDER",
                                   "apposition precedes its head", t))
    return diags


def rule_core_columns(s: Sentence, cfg: LintConfig) -> list[Diagnostic]:
    """CORE.COLUMNS / CORE.ENHANCED_UNSUPPORTED: column usage conventions."""
    diags = []
    for t in s.tokens:
        unexpected = []
        if t.lemma_col != "_":
            unexpected.append("LEMMA")
        if t.xpos_col != "_":
            unexpected.append("XPOS")
        if t.feats_col not in ("_", "Typo=Yes"):
            unexpected.append("FEATS")
        if unexpected:
            diags.append(_diag(cfg, s, "CORE.COLUMNS",
                               f"unexpected content in {'/'.join(unexpected)}; "
                               f"annotations live in UPOS, HEAD, DEPREL and "
                               f"MISC", t))
        if t.deps_col != "_":
            diags.append(_diag(cfg, s, "CORE.ENHANCED_UNSUPPORTED",
                               "enhanced dependencies are not annotated", t))
    for node in s.empty_nodes:
        diags.append(_diag(cfg, s, "CORE.ENHANCED_UNSUPPORTED",
                           "empty nodes are not annotated",
                           line=node.line or s.line))
    return diags


SENTENCE_RULES = (
    rule_upos_vocabulary,
    rule_deprel_vocabulary,
    rule_copula,
    rule_part_closed_class,
    rule_aux_closed_class,
    rule_fixed_whitelist,
    rule_goeswith_shape,
    rule_lemma_conventions,
    rule_typo_features,
    rule_mwt_shape,
    rule_placeholder_tags,
    rule_relative_marker,
    rule_review_hints,
    rule_core_columns,
)


def lint_sentence(s: Sentence, cfg: LintConfig | None = None) -> list[Diagnostic]:
    """Run all enabled rules plus structural validation on one sentence.

    Output is deterministically ordered by (line, token id, rule id).
    """
    cfg = cfg or LintConfig()
    diags: list[Diagnostic] = []
    for d in validate_structure(s):
        diags.append(replace(d, severity=cfg.severity(d.rule_id)))
    for rule in SENTENCE_RULES:
        diags.extend(rule(s, cfg))
    diags = [d for d in diags if cfg.rule_enabled(d.rule_id)]
    diags.sort(key=lambda d: d.sort_key)
    return diags
