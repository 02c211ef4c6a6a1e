"""Concrete syntax: lexer, recursive-descent parsers, and printers.

Grammar (operators listed loosest-first):
    terms      t ::= 0 | 1 | DECIMAL | IDENT | t + t | t * t | ( t )
               (+ and * left-associative; * binds tighter)
    formulas   f ::= f <-> f | f -> f | f \\/ f | f /\\ f | ~f
                   | t = t | t < t | true | false
                   | forall IDENT [< t] . f | exists IDENT [< t] . f | ( f )
               (-> and <-> right-associative; quantifier bodies extend
               maximally to the right)
    booleans   b ::= t < t | ~b | b -> b | ( b )
    programs   S ::= IDENT := t | S ; S | if b then S else S fi
                   | while b do S od          (; right-associative)
    schemas    const(m,n) | proj(i,n) | add | mul | cn(f; g1,...,gm)
                   | pr(f; g) | mn(f) | STDLIB-NAME
                   | sum_of(f) | prod_of(f) | bforall(f) | bexists(f)
                   | cases(c1,g1; c2,g2; ...)
    proofs     assign { conclusion: T }
                   | seq { left: P right: P conclusion: T }
                   | cond { then: P else: P conclusion: T }
                   | loop { invariant: f body: P conclusion: T }
                   | conseq { inner: P conclusion: T }
               with triples T ::= { f } S { f }

Identifiers may carry trailing primes (y', x'').  `#` starts a comment to
end of line.  All parse errors carry a SourceSpan of byte offsets.
"""

import re
from dataclasses import dataclass

from . import xrec
from .terms import (Add, And, BExists, BForall, Eq, Exists, FalseC, Forall,
                    Iff, Implies, Lit, Lt, Mul, Not, Or, TrueC, Var)
from .whilelang import Assign, If, ImpliesB, Less, NotB, Seq as SeqP, While
from .alpha import HoareTriple
from .proofs import AssignAxiom, CondRule, ConseqRule, SeqRule, WhileRule


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start after end")


class ParseError(Exception):
    def __init__(self, message, span):
        super().__init__(f"{message} (at {span.start}..{span.end})")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


_SYMBOLS = ["<->", "->", ":=", "/\\", "\\/",
            "<", "=", "~", "+", "*", "(", ")", ".", ";", "{", "}", ":", ","]
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_NUM = re.compile(r"[0-9]+")


def tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        m = _NUM.match(text, i)
        if m:
            toks.append(Token("num", m.group(), SourceSpan(i, m.end())))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            toks.append(Token("ident", m.group(), SourceSpan(i, m.end())))
            i = m.end()
            continue
        for s in _SYMBOLS:
            if text.startswith(s, i):
                toks.append(Token(s, s, SourceSpan(i, i + len(s))))
                i += len(s)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", SourceSpan(i, i + 1))
    toks.append(Token("eof", "", SourceSpan(n, n)))
    return toks


_KEYWORDS = {"true", "false", "forall", "exists", "if", "then", "else", "fi",
             "while", "do", "od"}


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def at(self, kind, text=None):
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def at_word(self, word):
        return self.at("ident", word)

    def expect(self, kind, text=None):
        t = self.peek()
        if not self.at(kind, text):
            want = text or kind
            raise ParseError(f"expected {want!r}, found {t.text or 'end of input'!r}",
                             t.span)
        return self.next()

    def expect_word(self, word):
        return self.expect("ident", word)

    def fail(self, msg):
        raise ParseError(msg, self.peek().span)

    def done(self):
        t = self.peek()
        if t.kind != "eof":
            raise ParseError(f"trailing input {t.text!r}", t.span)

    # -- terms ----------------------------------------------------------

    def term(self):
        t = self.term_factor()
        while self.at("+"):
            self.next()
            t = Add(t, self.term_factor())
        return t

    def term_factor(self):
        t = self.term_atom()
        while self.at("*"):
            self.next()
            t = Mul(t, self.term_atom())
        return t

    def term_atom(self):
        t = self.peek()
        if t.kind == "num":
            self.next()
            return Lit(int(t.text))
        if t.kind == "ident":
            if t.text in _KEYWORDS:
                self.fail(f"keyword {t.text!r} is not a term")
            self.next()
            return Var(t.text)
        if t.kind == "(":
            self.next()
            inner = self.term()
            self.expect(")")
            return inner
        self.fail(f"expected a term, found {t.text or 'end of input'!r}")

    # -- formulas -------------------------------------------------------

    def formula(self):
        left = self.formula_implies()
        if self.at("<->"):
            self.next()
            return Iff(left, self.formula())
        return left

    def formula_implies(self):
        left = self.formula_or()
        if self.at("->"):
            self.next()
            return Implies(left, self.formula_implies())
        return left

    def formula_or(self):
        f = self.formula_and()
        while self.at("\\/"):
            self.next()
            f = Or(f, self.formula_and())
        return f

    def formula_and(self):
        f = self.formula_unary()
        while self.at("/\\"):
            self.next()
            f = And(f, self.formula_unary())
        return f

    def formula_unary(self):
        if self.at("~"):
            self.next()
            return Not(self.formula_unary())
        if self.at_word("forall") or self.at_word("exists"):
            return self.quantifier()
        return self.formula_atom()

    def quantifier(self):
        kw = self.next().text
        v = Var(self.expect("ident").text)
        bound = None
        if self.at("<"):
            self.next()
            bound = self.term()
        self.expect(".")
        body = self.formula()
        if kw == "forall":
            return BForall(v, bound, body) if bound is not None else Forall(v, body)
        return BExists(v, bound, body) if bound is not None else Exists(v, body)

    def formula_atom(self):
        if self.at_word("true"):
            self.next()
            return TrueC()
        if self.at_word("false"):
            self.next()
            return FalseC()
        if self.at("("):
            # either a parenthesized formula or a parenthesized term
            mark = self.pos
            try:
                self.next()
                inner = self.formula()
                self.expect(")")
            except ParseError:
                self.pos = mark
            else:
                if self.at("=") or self.at("<") or self.at("+") or self.at("*"):
                    self.pos = mark  # it was a term after all
                else:
                    return inner
        left = self.term()
        if self.at("="):
            self.next()
            return Eq(left, self.term())
        if self.at("<"):
            self.next()
            return Lt(left, self.term())
        self.fail("expected '=' or '<' after a term")

    # -- boolean guards -------------------------------------------------

    def boolexpr(self):
        left = self.bool_unary()
        if self.at("->"):
            self.next()
            return ImpliesB(left, self.boolexpr())
        return left

    def bool_unary(self):
        if self.at("~"):
            self.next()
            return NotB(self.bool_unary())
        if self.at("("):
            mark = self.pos
            try:
                self.next()
                inner = self.boolexpr()
                self.expect(")")
            except ParseError:
                self.pos = mark
            else:
                if self.at("<") or self.at("+") or self.at("*"):
                    self.pos = mark
                else:
                    return inner
        left = self.term()
        self.expect("<")
        return Less(left, self.term())

    # -- programs -------------------------------------------------------

    def program(self):
        first = self.statement()
        if self.at(";"):
            self.next()
            return SeqP(first, self.program())
        return first

    def statement(self):
        if self.at_word("if"):
            self.next()
            guard = self.boolexpr()
            self.expect_word("then")
            then = self.program()
            self.expect_word("else")
            els = self.program()
            self.expect_word("fi")
            return If(guard, then, els)
        if self.at_word("while"):
            self.next()
            guard = self.boolexpr()
            self.expect_word("do")
            body = self.program()
            self.expect_word("od")
            return While(guard, body)
        t = self.peek()
        if t.kind == "ident" and t.text not in _KEYWORDS:
            self.next()
            self.expect(":=")
            return Assign(Var(t.text), self.term())
        self.fail(f"expected a statement, found {t.text or 'end of input'!r}")

    # -- schemas --------------------------------------------------------

    def schema(self):
        t = self.expect("ident")
        name = t.text
        if name == "const":
            self.expect("(")
            m = int(self.expect("num").text)
            self.expect(",")
            n = int(self.expect("num").text)
            self.expect(")")
            return xrec.Const(m, n)
        if name == "proj":
            self.expect("(")
            i = int(self.expect("num").text)
            self.expect(",")
            n = int(self.expect("num").text)
            self.expect(")")
            return xrec.Proj(i, n)
        if name == "add":
            return xrec.AddF()
        if name == "mul":
            return xrec.MulF()
        if name == "cn":
            self.expect("(")
            f = self.schema()
            self.expect(";")
            gs = [self.schema()]
            while self.at(","):
                self.next()
                gs.append(self.schema())
            self.expect(")")
            return self._mk(xrec.Cn, t, f, tuple(gs))
        if name == "pr":
            self.expect("(")
            f = self.schema()
            self.expect(";")
            g = self.schema()
            self.expect(")")
            return self._mk(xrec.Pr, t, f, g)
        if name == "mn":
            self.expect("(")
            f = self.schema()
            self.expect(")")
            return self._mk(xrec.Mn, t, f)
        if name == "cases":
            self.expect("(")
            branches = []
            while True:
                c = self.schema()
                self.expect(",")
                g = self.schema()
                branches.append((c, g))
                if not self.at(";"):
                    break
                self.next()
            self.expect(")")
            return self._mk(xrec.cases, t, branches)
        if name in xrec.STDLIB:
            return xrec.STDLIB[name]()
        if name in ("sum_of", "prod_of", "bforall", "bexists"):
            self.expect("(")
            f = self.schema()
            self.expect(")")
            return self._mk(xrec.STDLIB_COMBINATORS[name], t, f)
        raise ParseError(f"unknown schema constructor {name!r}", t.span)

    def _mk(self, ctor, tok, *args):
        try:
            return ctor(*args)
        except ValueError as e:
            raise ParseError(str(e), tok.span)

    # -- proofs ---------------------------------------------------------

    def triple(self):
        self.expect("{")
        pre = self.formula()
        self.expect("}")
        prog = self.program()
        self.expect("{")
        post = self.formula()
        self.expect("}")
        return HoareTriple(pre, prog, post)

    def _field(self, name):
        self.expect_word(name)
        self.expect(":")

    def proof(self):
        t = self.expect("ident")
        rule = t.text
        self.expect("{")
        if rule == "assign":
            self._field("conclusion")
            node = AssignAxiom(self.triple())
        elif rule == "seq":
            self._field("left")
            left = self.proof()
            self._field("right")
            right = self.proof()
            self._field("conclusion")
            node = SeqRule(left, right, self.triple())
        elif rule == "cond":
            self._field("then")
            then = self.proof()
            self._field("else")
            els = self.proof()
            self._field("conclusion")
            node = CondRule(then, els, self.triple())
        elif rule == "loop":
            self._field("invariant")
            inv = self.formula_for_field()
            self._field("body")
            body = self.proof()
            self._field("conclusion")
            node = WhileRule(inv, body, self.triple())
        elif rule == "conseq":
            self._field("inner")
            inner = self.proof()
            self._field("conclusion")
            node = ConseqRule(inner, self.triple())
        else:
            raise ParseError(f"unknown proof rule {rule!r}", t.span)
        self.expect("}")
        return node

    def formula_for_field(self):
        # an invariant field ends where the next field name begins; since
        # formulas never contain 'body', parsing greedily is safe
        return self.formula()


def _parse(text, production):
    p = _Parser(text)
    out = production(p)
    p.done()
    return out


def parse_term(text):
    return _parse(text, _Parser.term)


def parse_formula(text):
    return _parse(text, _Parser.formula)


def parse_bool(text):
    return _parse(text, _Parser.boolexpr)


def parse_program(text):
    return _parse(text, _Parser.program)


def parse_schema(text):
    return _parse(text, _Parser.schema)


def parse_proof(text):
    return _parse(text, _Parser.proof)


def parse_triple(text):
    return _parse(text, _Parser.triple)


# -- printers (the ASTs' str forms are already in the grammar) ----------


def format_term(t):
    return str(t)


def format_formula(f):
    return str(f)


def format_program(p):
    return str(p)


def format_schema(h):
    if isinstance(h, xrec.Const):
        return f"const({h.value},{h.arity})"
    if isinstance(h, xrec.Proj):
        return f"proj({h.index},{h.arity})"
    if isinstance(h, xrec.AddF):
        return "add"
    if isinstance(h, xrec.MulF):
        return "mul"
    if isinstance(h, xrec.Cn):
        return f"cn({format_schema(h.f)}; {', '.join(format_schema(g) for g in h.gs)})"
    if isinstance(h, xrec.Pr):
        return f"pr({format_schema(h.f)}; {format_schema(h.g)})"
    if isinstance(h, xrec.Mn):
        return f"mn({format_schema(h.f)})"
    raise TypeError(f"not a schema: {h!r}")


def format_triple(t):
    return f"{{{t.pre}}} {t.prog} {{{t.post}}}"


def format_proof(p, indent=0):
    pad = "  " * indent
    if isinstance(p, AssignAxiom):
        return f"{pad}assign {{ conclusion: {format_triple(p.conclusion)} }}"
    if isinstance(p, SeqRule):
        return (f"{pad}seq {{\n"
                f"{pad}  left: {format_proof(p.left, indent + 1).lstrip()}\n"
                f"{pad}  right: {format_proof(p.right, indent + 1).lstrip()}\n"
                f"{pad}  conclusion: {format_triple(p.conclusion)}\n{pad}}}")
    if isinstance(p, CondRule):
        return (f"{pad}cond {{\n"
                f"{pad}  then: {format_proof(p.then_pf, indent + 1).lstrip()}\n"
                f"{pad}  else: {format_proof(p.else_pf, indent + 1).lstrip()}\n"
                f"{pad}  conclusion: {format_triple(p.conclusion)}\n{pad}}}")
    if isinstance(p, WhileRule):
        return (f"{pad}loop {{\n"
                f"{pad}  invariant: {p.invariant}\n"
                f"{pad}  body: {format_proof(p.body_pf, indent + 1).lstrip()}\n"
                f"{pad}  conclusion: {format_triple(p.conclusion)}\n{pad}}}")
    if isinstance(p, ConseqRule):
        return (f"{pad}conseq {{\n"
                f"{pad}  inner: {format_proof(p.inner, indent + 1).lstrip()}\n"
                f"{pad}  conclusion: {format_triple(p.conclusion)}\n{pad}}}")
    raise TypeError(f"not a proof node: {p!r}")
