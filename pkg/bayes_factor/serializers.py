import json
from pathlib import Path

from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from .calib import MODEL_VERSION, CalibrationModel, CalibrationSegment, CubicFit
from .exceptions import InputFileError, InvalidModelError


# ========== CALIBRATION MODEL DOCUMENT ==========

class CubicFitSerializer(serializers.Serializer):
    coeffs = serializers.ListField(child = serializers.FloatField(), min_length = 4, max_length = 4)
    r2 = serializers.FloatField()


class SegmentSerializer(serializers.Serializer):
    domain = serializers.ListField(child = serializers.FloatField(), min_length = 2, max_length = 2)
    source = CubicFitSerializer()
    reference = CubicFitSerializer()

    def validate_domain(self, value):
        if not value[0] < value[1]:
            raise serializers.ValidationError('domain must be an increasing interval')
        return value


class CalibrationModelSerializer(serializers.Serializer):
    """Versioned JSON document of a CalibrationModel; field order is fixed"""

    version = serializers.IntegerField()
    exclusion_below = serializers.FloatField()
    segments = SegmentSerializer(many = True)

    def validate_version(self, value):
        if value != MODEL_VERSION:
            raise serializers.ValidationError('unsupported model version')
        return value

    def validate_segments(self, value):
        if not value:
            raise serializers.ValidationError('no segments')
        for previous, current in zip(value, value[1:]):
            if previous['domain'][1] != current['domain'][0]:
                raise serializers.ValidationError('segments must be contiguous')
        return value

    def create(self, validated_data):
        segments = []
        for index, segment in enumerate(validated_data['segments']):
            domain = tuple(segment['domain'])
            segments.append(CalibrationSegment(
                domain = domain,
                source = CubicFit(tuple(segment['source']['coeffs']), segment['source']['r2'], domain),
                reference = CubicFit(tuple(segment['reference']['coeffs']), segment['reference']['r2'], domain),
                closed_left = index == 0,
            ))
        return CalibrationModel(
            segments = tuple(segments),
            exclusion_below = validated_data['exclusion_below'],
            version = validated_data['version'],
        )


def render_json(data) -> str:
    return JSONRenderer().render(data, renderer_context = {'indent': 2}).decode('utf-8')


def dump_model(model: CalibrationModel) -> str:
    return render_json(CalibrationModelSerializer(model).data) + '\n'


def save_model(model: CalibrationModel, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents = True, exist_ok = True)
    path.write_text(dump_model(model), encoding = 'utf-8')
    return path


def parse_model(text: str) -> CalibrationModel:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidModelError(f'model is not valid JSON: {e}')

    serializer = CalibrationModelSerializer(data = payload)
    if not serializer.is_valid():
        raise InvalidModelError(f'invalid model: {json.dumps(serializer.errors)}')
    return serializer.save()


def load_model(path) -> CalibrationModel:
    try:
        text = Path(path).read_text(encoding = 'utf-8')
    except OSError as e:
        raise InputFileError(f'cannot read model {path}: {e.strerror}')
    return parse_model(text)


# ========== OUTPUT ROWS ==========

class BayesFactorResultSerializer(serializers.Serializer):
    method = serializers.CharField()
    n = serializers.IntegerField(allow_null = True)
    successes = serializers.IntegerField(allow_null = True)
    frequency = serializers.FloatField(allow_null = True)
    threshold = serializers.FloatField(allow_null = True)
    canonical = serializers.BooleanField(allow_null = True)
    y_sum = serializers.IntegerField(allow_null = True)
    posterior_null = serializers.FloatField(allow_null = True)
    bf10 = serializers.FloatField()
    bf01 = serializers.FloatField()
    bf10_exact = serializers.SerializerMethodField()
    valid = serializers.BooleanField()

    def get_bf10_exact(self, obj):
        return str(obj.exact) if obj.exact is not None else None


class WorksheetRowSerializer(serializers.Serializer):
    num = serializers.IntegerField()
    x = serializers.IntegerField()
    r = serializers.FloatField()
    y = serializers.IntegerField()


class ThresholdSolutionSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    crit = serializers.FloatField()
    k_exact = serializers.FloatField()
    k_working = serializers.FloatField()


class ScanRowSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    s = serializers.IntegerField()
    bf10 = serializers.FloatField()
    above_threshold = serializers.BooleanField()


class TTestRowSerializer(serializers.Serializer):
    variances = serializers.CharField()
    levene_f = serializers.FloatField(allow_null = True)
    levene_p = serializers.FloatField(allow_null = True)
    t = serializers.FloatField()
    df = serializers.FloatField()
    p = serializers.FloatField()
    mean_diff = serializers.FloatField()
    se = serializers.FloatField()
    ci95_lo = serializers.FloatField()
    ci95_hi = serializers.FloatField()


class CorrectionSerializer(serializers.Serializer):
    frequency = serializers.FloatField()
    bf_source = serializers.FloatField()
    bf_corrected = serializers.FloatField()
    segment = serializers.IntegerField()
    valid = serializers.BooleanField()


class SegmentSummarySerializer(serializers.Serializer):
    segment = serializers.IntegerField()
    lo = serializers.FloatField()
    hi = serializers.FloatField()
    points = serializers.IntegerField()
    source_r2 = serializers.FloatField()
    reference_r2 = serializers.FloatField()


class ReportRowSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    s = serializers.IntegerField()
    frequency = serializers.FloatField()
    bf_sequential = serializers.FloatField()
    bf_exact = serializers.FloatField()
    bf_corrected = serializers.FloatField(allow_null = True)
    corrected_valid = serializers.BooleanField(allow_null = True)
    note = serializers.CharField(allow_blank = True)


class FitDataRowSerializer(serializers.Serializer):
    segment = serializers.IntegerField()
    kind = serializers.CharField()
    x = serializers.FloatField()
    source_fit = serializers.FloatField(allow_null = True)
    reference_fit = serializers.FloatField(allow_null = True)
    source_observed = serializers.FloatField(allow_null = True)
    reference_observed = serializers.FloatField(allow_null = True)


class ResidualRowSerializer(serializers.Serializer):
    table = serializers.CharField()
    label = serializers.CharField()
    computed = serializers.FloatField()
    published = serializers.FloatField()
    residual = serializers.FloatField()
    tolerance = serializers.FloatField()
    within = serializers.BooleanField()
