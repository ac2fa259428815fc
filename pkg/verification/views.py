from django.shortcuts import get_object_or_404
from rest_framework.generics import ListAPIView, RetrieveAPIView

from .models import SuiteRun
from .serializers import SuiteRecordSerializer, SuiteRunDetailSerializer, SuiteRunSerializer


class SuiteRunListView(ListAPIView):
    """Stored verification runs, newest first; ``?suite=`` filters by suite."""
    serializer_class = SuiteRunSerializer

    def get_queryset(self):
        queryset = SuiteRun.objects.all()
        suite = self.request.query_params.get('suite')
        if suite:
            queryset = queryset.filter(suite=suite)
        return queryset


class SuiteRunDetailView(RetrieveAPIView):
    queryset = SuiteRun.objects.all()
    serializer_class = SuiteRunDetailSerializer


class SuiteRecordListView(ListAPIView):
    serializer_class = SuiteRecordSerializer

    def get_queryset(self):
        run = get_object_or_404(SuiteRun, pk=self.kwargs['pk'])
        queryset = run.records.all()
        if self.request.query_params.get('violations') in ('1', 'true'):
            queryset = queryset.filter(violation=True)
        return queryset
