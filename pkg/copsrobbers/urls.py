"""
URL configuration for the copsrobbers project.

The admin browses stored verification runs; `api/` exposes the same runs
read-only through Django REST framework.
"""
from django.contrib import admin
from django.urls import path, include

urlpatterns = [
    path('admin/', admin.site.urls),
    path('api/', include('verification.urls')),
]
