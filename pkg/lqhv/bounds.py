"""Closed-form bounds on maximal Bell violations"""

__copyright__ = "Copyright (C) 2026 The lqhv developers"

__license__ = """
Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in
all copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN
THE SOFTWARE.
"""

import logging
from itertools import product
from math import log

from pytools import Record, Table

from lqhv.qlinalg import ValidationError

logger = logging.getLogger(__name__)


__doc__ = """
All bounds are functions of the number of sites *N*, the local dimension *d*
and the number of settings per site *S*.

.. autoclass:: Interval
.. autoclass:: ComponentBound
.. autoclass:: SupremumBounds
.. autoclass:: BoundReport

.. autofunction:: lqhv_norm_bound
.. autofunction:: combined_bound
.. autofunction:: supremum_bounds
.. autofunction:: literature_bounds
.. autofunction:: bound_report
.. autofunction:: bounds_table
.. autofunction:: improvement_failures
.. autofunction:: bounds_table_rows
.. autofunction:: format_bounds_table
"""


# {{{ intervals

class Interval(Record):
    """A closed interval ``[lower, upper]``.

    .. attribute:: lower
    .. attribute:: upper
    """

    def __init__(self, lower, upper):
        if lower > upper:
            raise ValidationError(f"empty interval [{lower}, {upper}]")
        super().__init__(lower=float(lower), upper=float(upper))

    def affine(self, scale, shift):
        """Return ``{scale * x + shift}`` for *scale* > 0."""
        return Interval(scale * self.lower + shift, scale * self.upper + shift)

    def __contains__(self, value):
        return self.lower <= value <= self.upper

    def __str__(self):
        return "[%.6g, %.6g]" % (self.lower, self.upper)


GROTHENDIECK_REAL = Interval(1.676, 1.783)
GROTHENDIECK_REAL_ORDER3 = Interval(1.41421356, 1.5164)


def conservative_value(value):
    """Return the smallest value an entry may take: the lower endpoint of an
    :class:`Interval`, or the value itself.
    """
    if isinstance(value, Interval):
        return value.lower
    return value

# }}}


# {{{ bound records

class ComponentBound(Record):
    """
    .. attribute:: name
    .. attribute:: value

        A :class:`float` or an :class:`Interval`.

    .. attribute:: source

        A short description of where the bound comes from.

    .. attribute:: exact

        *False* for order-of-growth bounds holding only up to an unknown
        universal constant. Such entries never take part in comparisons.
    """

    def __init__(self, name, value, source, exact=True):
        super().__init__(name=name, value=value, source=source, exact=exact)

    def format_value(self):
        if isinstance(self.value, Interval):
            return str(self.value)
        prefix = "" if self.exact else "~"
        return "%s%.6g" % (prefix, self.value)


class SupremumBounds(Record):
    """
    .. attribute:: over_dimension

        Bound uniform in the local dimension, ``(2S - 1)^(N - 1)``.

    .. attribute:: over_settings

        Bound uniform in the number of settings,
        ``(2d)^(N - 1) - 2^(N - 1) + 1``.
    """


class BoundReport(Record):
    """
    .. attribute:: num_sites
    .. attribute:: local_dim
    .. attribute:: num_settings
    .. attribute:: lqhv_norm_bound
    .. attribute:: combined_bound
    .. attribute:: component_bounds

        A list of :class:`ComponentBound` whose minimum is
        :attr:`combined_bound`.

    .. attribute:: literature_bounds
    .. attribute:: supremum_bounds
    .. attribute:: grothendieck_real
    .. attribute:: grothendieck_real_order3
    """

# }}}


# {{{ formulas

def _check_sizes(num_sites, local_dim, num_settings):
    for name, value, least in [
            ("number of sites", num_sites, 2),
            ("local dimension", local_dim, 2),
            ("number of settings", num_settings, 1)]:
        if int(value) != value or value < least:
            raise ValidationError(f"{name} must be an integer >= {least}, "
                    f"got {value}")


def lqhv_norm_bound(num_sites, local_dim, num_settings):
    """Return the upper bound on the total variation of the signed
    distribution: ``d^((N-1)/2)`` for *S* = 2, ``d^(S(N-1)/2)`` for
    *S* >= 3 and 1 for *S* = 1.
    """
    _check_sizes(num_sites, local_dim, num_settings)

    if num_settings == 1:
        return 1.0
    elif num_settings == 2:
        return float(local_dim) ** ((num_sites - 1) / 2)
    else:
        return float(local_dim) ** (num_settings * (num_sites - 1) / 2)


def combined_bound(num_sites, local_dim, num_settings):
    """Return ``(value, components)``, where *value* is the minimum over the
    :class:`ComponentBound` list *components*.
    """
    _check_sizes(num_sites, local_dim, num_settings)
    n, d, s = num_sites, local_dim, num_settings

    components = [
            ComponentBound("lqhv_norm", lqhv_norm_bound(n, d, s),
                "total variation of the signed distribution"),
            ComponentBound("settings", float((2*s - 1) ** (n - 1)),
                "uniform in the local dimension"),
            ]
    if s >= 3:
        components.append(
                ComponentBound("dimension",
                    float((2*d) ** (n - 1) - 2 ** (n - 1) + 1),
                    "uniform in the number of settings"))

    return min(comp.value for comp in components), components


def supremum_bounds(num_sites, local_dim, num_settings):
    """Return the :class:`SupremumBounds` for the scenario size."""
    _check_sizes(num_sites, local_dim, num_settings)
    n, d, s = num_sites, local_dim, num_settings

    return SupremumBounds(
            over_dimension=float((2*s - 1) ** (n - 1)),
            over_settings=float((2*d) ** (n - 1) - 2 ** (n - 1) + 1))


def literature_bounds(num_sites, local_dim, num_settings):
    """Return the list of previously known upper bounds (as
    :class:`ComponentBound`) applicable to the scenario size.
    """
    _check_sizes(num_sites, local_dim, num_settings)
    n, d, s = num_sites, local_dim, num_settings

    result = []
    if n == 2:
        if d == 2:
            result.append(ComponentBound("grothendieck",
                GROTHENDIECK_REAL.affine(2, 1),
                "real Grothendieck constant, qubit pairs"))
        else:
            result.append(ComponentBound("grothendieck",
                GROTHENDIECK_REAL.affine(2*d**2, 2*d**2 - 1),
                "real Grothendieck constant, qudit pairs"))

        result.append(ComponentBound("operator_space", float(2*d),
            "operator space theory, exact bipartite"))
        result.append(ComponentBound("settings_order", float(min(d, s)),
            "operator space theory, up to a universal constant",
            exact=False))
        result.append(ComponentBound("dimension_order", d / log(d),
            "operator space theory, up to a universal constant",
            exact=False))

    elif n == 3:
        result.append(ComponentBound("operator_space", float(4*d**2),
            "operator space theory, tripartite"))

    else:
        result.append(ComponentBound("operator_space",
            float((2*d) ** (n - 1)),
            "operator space theory, N-partite"))

    return result


def bound_report(num_sites, local_dim, num_settings):
    combined, components = combined_bound(num_sites, local_dim, num_settings)

    return BoundReport(
            num_sites=num_sites,
            local_dim=local_dim,
            num_settings=num_settings,
            lqhv_norm_bound=lqhv_norm_bound(
                num_sites, local_dim, num_settings),
            combined_bound=combined,
            component_bounds=components,
            literature_bounds=literature_bounds(
                num_sites, local_dim, num_settings),
            supremum_bounds=supremum_bounds(
                num_sites, local_dim, num_settings),
            grothendieck_real=GROTHENDIECK_REAL,
            grothendieck_real_order3=GROTHENDIECK_REAL_ORDER3)


def improvement_failures(report):
    """Return the exact literature entries of *report* that are not strictly
    above its combined bound. Intervals are compared by their lower endpoint.
    """
    return [entry for entry in report.literature_bounds
            if entry.exact
            and not report.combined_bound < conservative_value(entry.value)]


def bounds_table(sites, dims, settings):
    """Return one :class:`BoundReport` per triple in the product of the
    ranges *sites*, *dims* and *settings*.
    """
    reports = [bound_report(n, d, s)
            for n, d, s in product(sites, dims, settings)]

    for report in reports:
        for entry in improvement_failures(report):
            logger.warning("(%d, %d, %d): combined bound %.6g not below "
                    "%s bound %s",
                    report.num_sites, report.local_dim, report.num_settings,
                    report.combined_bound, entry.name, entry.format_value())

    return reports

# }}}


# {{{ formatting

BOUNDS_TABLE_HEADER = ("N", "d", "S", "lqhv_norm_bound", "combined_bound",
        "literature")


def bounds_table_rows(reports):
    """Return a list of rows (header first) describing *reports*."""
    rows = [BOUNDS_TABLE_HEADER]
    for report in reports:
        rows.append((
            str(report.num_sites),
            str(report.local_dim),
            str(report.num_settings),
            "%.12g" % report.lqhv_norm_bound,
            "%.12g" % report.combined_bound,
            "; ".join("%s=%s" % (entry.name, entry.format_value())
                for entry in report.literature_bounds)))
    return rows


def format_bounds_table(reports, fmt="text"):
    """Return *reports* as an aligned text table (*fmt* = ``"text"``) or as
    CSV (*fmt* = ``"csv"``).
    """
    tbl = Table()
    for row in bounds_table_rows(reports):
        tbl.add_row(row)

    if fmt == "text":
        return str(tbl)
    elif fmt == "csv":
        return tbl.csv()
    else:
        raise ValidationError(f"unknown table format '{fmt}'")


def bound_report_as_dict(report):
    def entry_dict(entry):
        value = entry.value
        if isinstance(value, Interval):
            value = [value.lower, value.upper]
        return {"name": entry.name, "value": value, "source": entry.source,
                "exact": entry.exact}

    return {
            "N": report.num_sites,
            "d": report.local_dim,
            "S": report.num_settings,
            "lqhv_norm_bound": report.lqhv_norm_bound,
            "combined_bound": report.combined_bound,
            "components": [entry_dict(e) for e in report.component_bounds],
            "literature": [entry_dict(e) for e in report.literature_bounds],
            "supremum": {
                "over_dimension": report.supremum_bounds.over_dimension,
                "over_settings": report.supremum_bounds.over_settings,
                },
            "grothendieck_real": [report.grothendieck_real.lower,
                report.grothendieck_real.upper],
            "grothendieck_real_order3": [
                report.grothendieck_real_order3.lower,
                report.grothendieck_real_order3.upper],
            }

# }}}

# vim: foldmethod=marker
