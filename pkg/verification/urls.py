from django.urls import path

from .views import SuiteRecordListView, SuiteRunDetailView, SuiteRunListView

urlpatterns = [
    path("reports/", SuiteRunListView.as_view(), name="reports-list"),
    path("reports/<int:pk>/", SuiteRunDetailView.as_view(), name="reports-detail"),
    path("reports/<int:pk>/records/", SuiteRecordListView.as_view(), name="reports-records"),
]
