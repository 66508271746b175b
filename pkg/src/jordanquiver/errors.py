"""Exception types shared across the package.

ValidationError marks a mathematically inconsistent input (dimension
mismatches, negative multiplicities, divisibility failures).  ParseError
marks malformed textual or JSON input.  The CLI maps the two classes to
distinct exit codes so that pipelines can tell them apart.
"""


class ValidationError(ValueError):
    """A value violates a mathematical precondition or invariant."""


class ParseError(ValueError):
    """Textual or JSON input could not be parsed."""
