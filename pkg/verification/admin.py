from django.contrib import admin
from django.utils.html import format_html, format_html_join

from .models import SuiteRecord, SuiteRun


class SuiteRecordInline(admin.TabularInline):
    model = SuiteRecord
    extra = 0
    fields = ("seed", "n", "arcs", "transform", "c_before", "c_after", "verdicts", "violation", "error")
    readonly_fields = fields
    can_delete = False
    show_change_link = True


@admin.register(SuiteRun)
class SuiteRunAdmin(admin.ModelAdmin):
    list_display = ("id", "suite", "created_at", "instances_run", "violation_count", "passed")
    list_filter = ("suite", "passed")
    readonly_fields = ("instances_run", "violation_count", "violating_seeds", "passed", "violations_preview")
    inlines = [SuiteRecordInline]

    def violations_preview(self, obj):
        """Violating records as a small table."""
        violating = obj.records.filter(violation=True)
        if not violating.exists():
            return "No violations"
        rows = format_html_join(
            "",
            "<tr><td style='padding:3px;'>{}</td><td style='padding:3px;'>{}</td>"
            "<td style='padding:3px;'>{}</td></tr>",
            ((record.seed, record.transform, record.verdicts) for record in violating),
        )
        return format_html(
            "<table style='border:1px solid #999; border-collapse:collapse;'>"
            "<tr><th>seed</th><th>transform</th><th>verdicts</th></tr>{}</table>",
            rows,
        )
    violations_preview.short_description = "Violations"


@admin.register(SuiteRecord)
class SuiteRecordAdmin(admin.ModelAdmin):
    list_display = ("run", "seed", "transform", "n", "arcs", "c_before", "c_after", "violation")
    list_filter = ("run__suite", "violation")
    search_fields = ("transform", "error")
