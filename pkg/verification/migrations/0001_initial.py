# Generated by Django 5.2.4 on 2026-10-18 09:00

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SuiteRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('suite', models.CharField(choices=[('lemma1', 'Clique substitution keeps the cop number'), ('lemma2', 'Arc subdivision keeps the cop number'), ('lemma3', 'Clique substitution avoids the 3-stars'), ('lemma4', 'Subdivision reaches the target girth'), ('theorem1', 'Sources and doubled projective planes'), ('theorem3', 'P_k*-free strongly connected digraphs')], max_length=20)),
                ('config', models.JSONField(default=dict)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('instances_run', models.PositiveIntegerField(default=0, editable=False)),
                ('violation_count', models.PositiveIntegerField(default=0, editable=False)),
                ('violating_seeds', models.JSONField(default=list, editable=False)),
                ('passed', models.BooleanField(default=True, editable=False)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='SuiteRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('seed', models.BigIntegerField()),
                ('n', models.PositiveIntegerField(default=0)),
                ('arcs', models.PositiveIntegerField(default=0)),
                ('transform', models.CharField(blank=True, max_length=64)),
                ('c_before', models.PositiveIntegerField(blank=True, null=True)),
                ('c_after', models.PositiveIntegerField(blank=True, null=True)),
                ('verdicts', models.JSONField(blank=True, default=dict)),
                ('micros', models.PositiveBigIntegerField(default=0)),
                ('violation', models.BooleanField(default=False)),
                ('error', models.TextField(blank=True)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='records', to='verification.suiterun')),
            ],
            options={
                'ordering': ['seed', 'transform'],
            },
        ),
    ]
