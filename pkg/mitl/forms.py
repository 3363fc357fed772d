"""
Forms validating the numeric options the commands accept.
"""
from typing import Iterable, Optional

from django import forms

from mitl.analysis import SamplerConfig, SearchBounds
from mitl.benchgen import FAMILIES, instance_from_dict
from mitl.core.words import to_stamp
from mitl.exceptions import TilingError, WordFormatError


class StampField(forms.CharField):
    """A non-negative rational such as ``6``, ``3/2`` or ``1.25``."""

    def to_python(self, value):
        value = super().to_python(value)
        if value in self.empty_values:
            return None
        try:
            return to_stamp(value)
        except WordFormatError as exc:
            raise forms.ValidationError(str(exc), code='invalid')


class BoundsForm(forms.Form):
    """
    Form for the witness search bounds.
    """
    max_length = forms.IntegerField(
        min_value=1,
        label="Maximum word length",
    )
    grid = forms.IntegerField(
        min_value=1,
        label="Grid denominator",
        help_text="Stamps are multiples of 1/grid",
    )
    horizon = StampField(label="Largest stamp")
    min_length = forms.IntegerField(min_value=1, required=False)

    @classmethod
    def from_text(cls, text: str) -> 'BoundsForm':
        """Bind ``N,g,Tmax``."""
        parts = [part.strip() for part in text.split(',')]
        if len(parts) != 3:
            parts = (parts + ['', '', ''])[:3]
        return cls(dict(zip(('max_length', 'grid', 'horizon'), parts)))

    def clean(self):
        cleaned = super().clean()
        lower, upper = cleaned.get('min_length'), cleaned.get('max_length')
        if lower is not None and upper is not None and lower > upper:
            raise forms.ValidationError("min_length exceeds max_length")
        return cleaned

    def bounds(self, alphabet: Iterable[str] = ()) -> SearchBounds:
        data = self.cleaned_data
        return SearchBounds(
            data['max_length'], data['grid'], data['horizon'], tuple(alphabet), data.get('min_length') or 1,
        )


class SamplerForm(forms.Form):
    """
    Form for sampled equivalence checks. Blank fields take the configured defaults.
    """
    words = forms.IntegerField(min_value=1, required=False)
    max_length = forms.IntegerField(min_value=1, required=False)
    grid = forms.IntegerField(min_value=1, required=False)
    horizon = StampField(required=False)
    seed = forms.IntegerField(required=False)

    def config(self, alphabet: Optional[Iterable[str]] = None) -> SamplerConfig:
        return SamplerConfig.from_settings(alphabet=tuple(alphabet or ()), **self.cleaned_data)


class TilingInstanceForm(forms.Form):
    """
    Form for a tiling instance, as read from an instance file.
    """
    family = forms.ChoiceField(choices=[(f, f) for f in FAMILIES])
    n = forms.IntegerField(min_value=1)
    tiles = forms.JSONField()
    horizontal = forms.JSONField(required=False)
    vertical = forms.JSONField(required=False)
    first = forms.CharField(required=False)
    final = forms.CharField(required=False)
    prefix = forms.JSONField(required=False)
    left = forms.JSONField(required=False)
    right = forms.JSONField(required=False)
    bottom = forms.JSONField(required=False)
    top = forms.JSONField(required=False)

    def clean(self):
        cleaned = super().clean()
        if self.errors:
            return cleaned
        data = {k: v for k, v in cleaned.items() if v not in (None, '')}
        try:
            cleaned['instance'] = instance_from_dict(data)
        except TilingError as exc:
            raise forms.ValidationError(str(exc), code='invalid')
        return cleaned


def form_errors(form: forms.Form) -> str:
    """Flatten form errors into one line for the console."""
    parts = []
    for field, errors in form.errors.items():
        label = 'input' if field == '__all__' else field
        parts.append(f"{label}: {' '.join(errors)}")
    return '; '.join(parts)
