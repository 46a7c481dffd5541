import csv
import json

COLUMNS = {
    'price': ('n_obs', 'strike_formula'),
    'mc': ('n_obs', 'strike_mc', 'std_error', 'paths', 'seed'),
    'sweep': ('param', 'value', 'n_obs', 'strike', 'error'),
    'compare': ('n_obs', 'strike_formula', 'strike_mc', 'std_error', 'rel_error', 'paths', 'seed'),
}

_SCIENTIFIC = ('std_error', 'rel_error')
_INTEGER = ('n_obs', 'paths', 'seed')


def format_value(column, value):
    """
    Fixed text representation of a report cell: integers as such, strikes and values with 6 significant digits,
    errors in scientific notation, missing values empty.
    """

    if value is None:
        return ''
    if isinstance(value, str):
        return value
    if column in _INTEGER:
        return '%d' % value
    if column in _SCIENTIFIC:
        return '%.6e' % value
    return '%.6g' % value


class RunReport(object):
    """
    Result of a CLI run: the command, the fully resolved inputs, one row per result and timing information.
    """

    def __init__(self, command, parameters, rows, timing=None, version=None):
        """
        :param command: Name of the subcommand.
        :param parameters: Dict with every input needed to reproduce the run.
        :param rows: List of dicts keyed by the columns of the command.
        :param timing: Dict with elapsed seconds per stage.
        :param version: Version of the package that produced the report.
        """

        super(RunReport, self).__init__()
        if command not in COLUMNS:
            raise ValueError('Unknown command %r' % (command,))
        if version is None:
            from . import __version__ as version
        self._command = command
        self._parameters = parameters
        self._rows = list(rows)
        self._timing = dict(timing or {})
        self._version = version

    @property
    def command(self):
        return self._command

    @property
    def parameters(self):
        return self._parameters

    @property
    def rows(self):
        return self._rows

    @property
    def timing(self):
        return self._timing

    @property
    def version(self):
        return self._version

    @property
    def columns(self):
        return COLUMNS[self._command]

    def to_dict(self):
        return {
            'command': self._command,
            'parameters': self._parameters,
            'rows': self._rows,
            'timing': self._timing,
            'version': self._version
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d['command'], d['parameters'], d['rows'], d['timing'], d['version'])

    def __eq__(self, other):
        return isinstance(other, RunReport) and self.to_dict() == other.to_dict()

    def save(self, f):
        """
        Saves the report as JSON.

        :param f: Path of the file.
        """

        with open(f, 'w', newline='\n') as fw:
            json.dump(self.to_dict(), fw, indent=2, sort_keys=True)
            fw.write('\n')

    @staticmethod
    def load(f):
        """
        Loads a report saved with save.

        :param f: Path of the file.
        :return: RunReport object.
        """

        with open(f, 'r') as fr:
            return RunReport.from_dict(json.load(fr))

    def formatted_rows(self):
        return [[format_value(c, row.get(c)) for c in self.columns] for row in self._rows]

    def write_csv(self, f):
        """
        Writes the rows as CSV with a header, fixed column order and LF line endings.

        :param f: Path of the file.
        """

        with open(f, 'w', newline='') as fw:
            writer = csv.writer(fw, lineterminator='\n')
            writer.writerow(self.columns)
            writer.writerows(self.formatted_rows())

    def to_table(self):
        """
        :return: Human readable table of the rows.
        """

        header = list(self.columns)
        body = self.formatted_rows()
        widths = [max([len(h)] + [len(r[i]) for r in body]) for i, h in enumerate(header)]
        lines = ['  '.join(h.rjust(w) for h, w in zip(header, widths))]
        lines.append('  '.join('-' * w for w in widths))
        lines.extend('  '.join(v.rjust(w) for v, w in zip(r, widths)) for r in body)
        return '\n'.join(lines)
